#pragma once

#include <vector>

#include "deqfi/matrix.hpp"
#include "deqfi/states.hpp"

namespace deqfi {

/// CPTP map as an explicit Kraus list. Construction checks shapes only;
/// physical validity is checked by validate_cptp (and by the JSON loader
/// after deserialization).
class KrausChannel {
 public:
  KrausChannel(int n_qubits, std::vector<ComplexMatrix> kraus);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return kraus_.front().dim(); }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

 private:
  int n_qubits_;
  std::vector<ComplexMatrix> kraus_;
};

/// Choi-Jamiolkowski block matrix: block (x, y) holds E(|x><y|), i.e.
/// entry (x*d + i, y*d + j) = <i|E(|x><y|)|j>.
class ChoiMatrix {
 public:
  ChoiMatrix(int n_qubits, ComplexMatrix mat);
  int n_qubits() const { return n_qubits_; }
  std::size_t channel_dim() const;
  const ComplexMatrix& mat() const { return mat_; }
  cd block_entry(std::size_t i, std::size_t j, std::size_t x, std::size_t y) const;

 private:
  int n_qubits_;
  ComplexMatrix mat_;
};

ComplexMatrix apply_matrix(const KrausChannel& ch, const ComplexMatrix& m);
DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho);

/// Entrywise rho_xy -> e^{-h(x,y) theta} rho_xy.
DensityMatrix pd_channel_apply(int n_qubits, double theta, const DensityMatrix& rho);
ComplexMatrix pd_apply_matrix(int n_qubits, double theta, const ComplexMatrix& m);

/// d/dtheta of the phase-damped state: -h(x,y) e^{-h(x,y) theta} rho_xy.
ComplexMatrix pd_derivative(int n_qubits, double theta, const DensityMatrix& rho);

/// Explicit Kraus form of the n-qubit phase damping channel (2^n diagonal
/// sign operators).
KrausChannel pd_kraus_channel(int n_qubits, double theta);

/// Completely dephasing channel: 2^n basis projectors.
KrausChannel cd_channel(int n_qubits);

ChoiMatrix choi_of(const KrausChannel& ch);

/// Choi matrices within Frobenius distance tol.
bool channels_equal(const KrausChannel& a, const KrausChannel& b,
                    double tol = default_tol());

/// a after b: Kraus list {A_i B_j}.
KrausChannel compose(const KrausChannel& a, const KrausChannel& b);

bool trace_preserving(const KrausChannel& ch, double tol = default_tol());
bool validate_cptp(const KrausChannel& ch, double tol = default_tol());

/// The named channels used across the test scenarios. W, N, USio need
/// n >= 2; R needs n >= 3; VSwap n = 2; Z and UPhase n = 1.
enum class NamedChannel { W, R, N, Z, USio, VSwap, UPhase };

KrausChannel named_channel(NamedChannel which, int n_qubits, double phi = 0.0);
int minimal_qubits(NamedChannel which);

}  // namespace deqfi
