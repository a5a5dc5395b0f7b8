#include "deqfi/fisher.hpp"

#include <cmath>
#include <stdexcept>

#include "deqfi/channels.hpp"
#include "deqfi/eigen.hpp"

namespace deqfi {

void Povm::validate(double tol) const {
  if (elements.empty())
    throw std::invalid_argument("empty measurement");
  const std::size_t d = elements.front().dim();
  ComplexMatrix sum(d);
  for (const auto& m : elements) {
    if (m.dim() != d)
      throw std::invalid_argument("measurement element dimension mismatch");
    if (!m.is_hermitian(tol))
      throw std::invalid_argument("measurement element is not Hermitian");
    if (min_eigenvalue(m) < -tol)
      throw std::invalid_argument("measurement element is not PSD");
    sum += m;
  }
  sum -= ComplexMatrix::identity(d);
  if (sum.max_abs() > tol)
    throw std::invalid_argument("measurement elements do not sum to identity");
}

ParamPoint::ParamPoint(DensityMatrix s, ComplexMatrix d, double tol)
    : state(std::move(s)), derivative(std::move(d)) {
  if (derivative.dim() != state.dim())
    throw std::invalid_argument("derivative dimension mismatch");
  const double scale = std::max(1.0, derivative.max_abs());
  if (!derivative.is_hermitian(tol * scale))
    throw std::invalid_argument("state derivative must be Hermitian");
  if (std::abs(derivative.trace()) > tol * scale * double(derivative.dim()))
    throw std::invalid_argument("state derivative must be traceless");
}

double qfi(const ParamPoint& p, double cutoff) {
  const EigenSystem es = herm_eigen(p.state.mat());
  const std::size_t d = es.values.size();
  // Sandwich the derivative once: B = V^dagger (d_rho) V.
  const ComplexMatrix b = es.vectors.adjoint() * (p.derivative * es.vectors);
  double f = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      const double w = std::max(0.0, es.values[i]) + std::max(0.0, es.values[k]);
      if (w <= cutoff) continue;
      f += std::norm(b(i, k)) / w;
    }
  return 2.0 * f;
}

ParamPoint dephasing_point(const DensityMatrix& rho, double theta) {
  return ParamPoint(pd_channel_apply(rho.n_qubits(), theta, rho),
                    pd_derivative(rho.n_qubits(), theta, rho));
}

double dephasing_qfi(const DensityMatrix& rho, double theta) {
  if (theta <= 0.0)
    throw std::invalid_argument("dephasing QFI requires theta > 0");
  return qfi(dephasing_point(rho, theta));
}

double classical_fi(const Povm& povm, const ParamPoint& p, double tol) {
  povm.validate();
  if (povm.elements.front().dim() != p.state.dim())
    throw std::invalid_argument("measurement dimension mismatch");
  double f = 0.0;
  for (const auto& m : povm.elements) {
    const double prob = (p.state.mat() * m).trace().real();
    const double dprob = (p.derivative * m).trace().real();
    if (prob <= tol) {
      if (std::abs(dprob) <= tol) continue;
      throw std::domain_error("singular probability point in classical FI");
    }
    f += dprob * dprob / prob;
  }
  return f;
}

Povm witness_povm(std::size_t x, std::size_t y, double beta, int n_qubits) {
  if (x == y)
    throw std::invalid_argument("witness needs two distinct basis states");
  const std::size_t d = std::size_t(1) << n_qubits;
  if (x >= d || y >= d)
    throw std::invalid_argument("basis index out of range");
  const cd ephase = std::exp(cd(0.0, -beta));
  ComplexMatrix m1(d), m2(d);
  m1(x, x) = 0.5;
  m1(y, y) = 0.5;
  m1(x, y) = 0.5 * ephase;
  m1(y, x) = 0.5 * std::conj(ephase);
  m2(x, x) = 0.5;
  m2(y, y) = 0.5;
  m2(x, y) = -0.5 * ephase;
  m2(y, x) = -0.5 * std::conj(ephase);
  ComplexMatrix m3 = ComplexMatrix::identity(d);
  m3(x, x) = 0.0;
  m3(y, y) = 0.0;
  return Povm{{m1, m2, m3}};
}

double pe_qfi(const DensityMatrix& rho, const Hamiltonian& h) {
  if (h.n_qubits() != rho.n_qubits())
    throw std::invalid_argument("Hamiltonian dimension mismatch");
  const EigenSystem es = herm_eigen(rho.mat());
  const std::size_t d = es.values.size();
  const ComplexMatrix b = es.vectors.adjoint() * (h.mat() * es.vectors);
  double f = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      const double pi = std::max(0.0, es.values[i]);
      const double pk = std::max(0.0, es.values[k]);
      if (pi + pk <= 1e-12) continue;
      const double diff = pi - pk;
      f += diff * diff / (pi + pk) * std::norm(b(i, k));
    }
  return 2.0 * f;
}

double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw std::invalid_argument("fidelity dimension mismatch");
  const ComplexMatrix root = sqrt_psd(rho.mat());
  const ComplexMatrix m = root * (sigma.mat() * root);
  const EigenSystem es = herm_eigen(m);
  double fid = 0.0;
  // Genuine zero modes come back as O(1e-15) noise; summing their square
  // roots would cost ~1e-7, so they are cut.
  for (double v : es.values)
    if (v > 1e-12) fid += std::sqrt(v);
  return fid;
}

double qfi_fidelity_oracle(const std::function<DensityMatrix(double)>& family,
                           double theta, double dtheta) {
  if (!(dtheta > 0.0))
    throw std::invalid_argument("oracle step must be positive");
  const auto estimate = [&](double step) {
    const DensityMatrix lo = family(theta - 0.5 * step);
    const DensityMatrix hi = family(theta + 0.5 * step);
    return 8.0 * (1.0 - uhlmann_fidelity(lo, hi)) / (step * step);
  };
  const double coarse = estimate(dtheta);
  const double fine = estimate(0.5 * dtheta);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace deqfi
