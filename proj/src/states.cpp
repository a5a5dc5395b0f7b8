#include "deqfi/states.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "deqfi/eigen.hpp"

namespace deqfi {

namespace {
std::size_t dim_for(int n_qubits) {
  if (n_qubits < 0 || n_qubits > 30)
    throw std::invalid_argument("unsupported qubit count");
  return std::size_t(1) << n_qubits;
}
}  // namespace

int popcount_index(std::uint64_t v) { return std::popcount(v); }

BlochVector BlochVector::from_polar(double r, double phi, double z) {
  return {r * std::cos(phi), r * std::sin(phi), z};
}

double BlochVector::r() const { return std::hypot(x, y); }

double BlochVector::phi() const {
  return (x == 0.0 && y == 0.0) ? 0.0 : std::atan2(y, x);
}

DensityMatrix::DensityMatrix(int n_qubits, ComplexMatrix mat, double tol)
    : n_qubits_(n_qubits), mat_(std::move(mat)) {
  if (mat_.dim() != dim_for(n_qubits))
    throw std::invalid_argument("density matrix dimension does not match qubit count");
  if (!mat_.is_finite())
    throw std::invalid_argument("density matrix has non-finite entries");
  if (!mat_.is_hermitian(tol))
    throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(mat_.trace() - cd(1.0, 0.0)) > tol)
    throw std::invalid_argument("density matrix trace differs from 1");
  if (min_eigenvalue(mat_) < -tol)
    throw std::invalid_argument("density matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::pure(int n_qubits, std::span<const cd> amplitudes,
                                  double tol) {
  const std::size_t d = dim_for(n_qubits);
  if (amplitudes.size() != d)
    throw std::invalid_argument("pure state amplitude count mismatch");
  double norm = 0.0;
  for (const cd& a : amplitudes) norm += std::norm(a);
  if (std::abs(norm - 1.0) > std::max(tol, 1e-9))
    throw std::invalid_argument("pure state amplitudes are not normalized");
  return DensityMatrix(n_qubits, ComplexMatrix::outer(amplitudes, amplitudes), tol);
}

Hamiltonian::Hamiltonian(int n_qubits, double epsilon)
    : n_qubits_(n_qubits), epsilon_(epsilon) {
  if (epsilon <= 0.0)
    throw std::invalid_argument("energy unit must be positive");
  const std::size_t d = dim_for(n_qubits);
  mat_ = ComplexMatrix(d);
  for (std::size_t i = 0; i < d; ++i)
    mat_(i, i) = double(std::popcount(i)) * epsilon;
}

DensityMatrix density_from_bloch(const BlochVector& b, double tol) {
  if (!b.physical(tol))
    throw std::invalid_argument("Bloch vector lies outside the unit ball");
  const double r = b.r();
  const double phi = b.phi();
  ComplexMatrix m(2);
  m(0, 0) = 0.5 * (1.0 + b.z);
  m(1, 1) = 0.5 * (1.0 - b.z);
  m(0, 1) = 0.5 * r * std::exp(cd(0.0, -phi));
  m(1, 0) = std::conj(m(0, 1));
  return DensityMatrix(1, std::move(m), std::max(tol, 1e-12));
}

BlochVector bloch_from_density(const DensityMatrix& rho) {
  if (rho.n_qubits() != 1)
    throw std::invalid_argument("Bloch decomposition requires one qubit");
  BlochVector b;
  b.x = 2.0 * rho.entry(1, 0).real();
  b.y = 2.0 * rho.entry(1, 0).imag();
  b.z = (rho.entry(0, 0) - rho.entry(1, 1)).real();
  return b;
}

ComplexMatrix hamming_mode(const DensityMatrix& rho, int h) {
  if (h < 0 || h > rho.n_qubits())
    throw std::invalid_argument("Hamming mode index out of range");
  const std::size_t d = rho.dim();
  ComplexMatrix m(d);
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y)
      if (std::popcount(x ^ y) == h) m(x, y) = rho.entry(x, y);
  return m;
}

DensityMatrix uniform_superposition(int n_qubits, std::span<const double> phases) {
  const std::size_t d = dim_for(n_qubits);
  if (phases.size() != d)
    throw std::invalid_argument("uniform superposition needs 2^n phases");
  const double amp = 1.0 / std::sqrt(double(d));
  std::vector<cd> v(d);
  for (std::size_t x = 0; x < d; ++x)
    v[x] = amp * std::exp(cd(0.0, -phases[x]));
  return DensityMatrix::pure(n_qubits, v);
}

double l1_coherence(const ComplexMatrix& m) {
  double acc = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      if (i != j) acc += std::abs(m(i, j));
  return acc;
}

double l1_coherence(const DensityMatrix& rho) { return l1_coherence(rho.mat()); }

}  // namespace deqfi
