#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "deqfi/matrix.hpp"

namespace deqfi {

/// Single-qubit state as a point in the Bloch ball.
struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  static BlochVector from_polar(double r, double phi, double z);
  double r() const;
  double phi() const;
  double norm_sq() const { return x * x + y * y + z * z; }
  bool physical(double tol = default_tol()) const { return norm_sq() <= 1.0 + tol; }
};

/// Validated n-qubit density matrix: Hermitian, PSD and unit trace
/// within tol, dim = 2^n. Validation runs on every construction.
class DensityMatrix {
 public:
  DensityMatrix(int n_qubits, ComplexMatrix mat, double tol = default_tol());
  static DensityMatrix pure(int n_qubits, std::span<const cd> amplitudes,
                            double tol = default_tol());

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return mat_.dim(); }
  const ComplexMatrix& mat() const { return mat_; }
  cd entry(std::size_t i, std::size_t j) const { return mat_(i, j); }

 private:
  int n_qubits_;
  ComplexMatrix mat_;
};

/// Noninteracting excitation-counting Hamiltonian: diagonal entry at |i> is
/// popcount(i) * epsilon.
class Hamiltonian {
 public:
  Hamiltonian(int n_qubits, double epsilon);
  int n_qubits() const { return n_qubits_; }
  double epsilon() const { return epsilon_; }
  const ComplexMatrix& mat() const { return mat_; }

 private:
  int n_qubits_;
  double epsilon_;
  ComplexMatrix mat_;
};

/// rho = [[ (1+z)/2, r e^{-i phi}/2 ], [ r e^{i phi}/2, (1-z)/2 ]].
/// Rejects vectors outside the Bloch ball.
DensityMatrix density_from_bloch(const BlochVector& b, double tol = default_tol());

/// Inverse of density_from_bloch; requires a single-qubit state.
BlochVector bloch_from_density(const DensityMatrix& rho);

/// The sub-matrix of rho with entries whose index pair lies at Hamming
/// distance h; the modes over h = 0..n partition rho exactly.
ComplexMatrix hamming_mode(const DensityMatrix& rho, int h);

/// Pure state with amplitudes e^{-i eta_x} / sqrt(2^n).
DensityMatrix uniform_superposition(int n_qubits, std::span<const double> phases);

/// l1 coherence: sum of moduli of off-diagonal entries.
double l1_coherence(const DensityMatrix& rho);
double l1_coherence(const ComplexMatrix& m);

int popcount_index(std::uint64_t v);

}  // namespace deqfi
