#include "deqfi/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "deqfi/kernels.hpp"

namespace deqfi {

namespace {

double offdiag_norm_sq(const ComplexMatrix& m) {
  double acc = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      if (i != j) acc += std::norm(m(i, j));
  return acc;
}

// One rotation zeroing b(p,q). b is kept Hermitian, v accumulates the
// unitary (columns). Row updates go through the zrot kernel; column and
// eigenvector updates walk the stride explicitly.
void jacobi_rotate(ComplexMatrix& b, ComplexMatrix& v,
                   std::size_t p, std::size_t q) {
  const cd beta = b(p, q);
  const double ab = std::abs(beta);
  if (ab == 0.0) return;
  const cd phase = beta / ab;
  const double alpha = b(p, p).real();
  const double gamma = b(q, q).real();
  const double tau = (gamma - alpha) / (2.0 * ab);
  double t;
  if (tau >= 0.0)
    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
  else
    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  // Unitary pivot block [[c, s*phase], [-s*conj(phase), c]].
  const cd sigma = -s * phase;

  const std::size_t n = b.dim();
  kernels::zrot(n, b.data() + p * n, b.data() + q * n, c, sigma);
  const cd cs = std::conj(sigma);
  for (std::size_t i = 0; i < n; ++i) {
    const cd bp = b(i, p), bq = b(i, q);
    b(i, p) = c * bp + cs * bq;
    b(i, q) = -sigma * bp + c * bq;
    const cd vp = v(i, p), vq = v(i, q);
    v(i, p) = c * vp + cs * vq;
    v(i, q) = -sigma * vp + c * vq;
  }
  b(p, q) = 0.0;
  b(q, p) = 0.0;
  b(p, p) = cd(b(p, p).real(), 0.0);
  b(q, q) = cd(b(q, q).real(), 0.0);
}

}  // namespace

EigenSystem herm_eigen(const ComplexMatrix& a, double herm_tol) {
  const std::size_t n = a.dim();
  if (n == 0) return {{}, ComplexMatrix(0)};
  if (!a.is_finite())
    throw std::invalid_argument("herm_eigen: non-finite entries");
  const double scale = std::max(1.0, a.max_abs());
  if (!a.is_hermitian(herm_tol * scale))
    throw std::invalid_argument("herm_eigen: input is not Hermitian");

  ComplexMatrix b = a;
  // Fold numerical asymmetry away so the sweep sees an exactly
  // Hermitian matrix.
  for (std::size_t i = 0; i < n; ++i) {
    b(i, i) = cd(b(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const cd m = 0.5 * (b(i, j) + std::conj(b(j, i)));
      b(i, j) = m;
      b(j, i) = std::conj(m);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double norm_sq = std::max(1e-300, kernels::frob_norm_sq(b.size(), b.data()));
  const double stop = 1e-28 * norm_sq;
  const int max_sweeps = 100;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (offdiag_norm_sq(b) <= stop) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        jacobi_rotate(b, v, p, q);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return b(i, i).real() < b(j, j).real();
  });

  EigenSystem es;
  es.values.resize(n);
  es.vectors = ComplexMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    es.values[k] = b(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) es.vectors(i, k) = v(i, order[k]);
  }
  return es;
}

double min_eigenvalue(const ComplexMatrix& a, double herm_tol) {
  return herm_eigen(a, herm_tol).values.front();
}

namespace {

ComplexMatrix apply_spectral(const EigenSystem& es,
                             const std::vector<double>& f) {
  const std::size_t n = es.values.size();
  ComplexMatrix w = es.vectors;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) w(i, j) *= f[j];
  return w * es.vectors.adjoint();
}

}  // namespace

ComplexMatrix sqrt_psd(const ComplexMatrix& a, double neg_tol) {
  EigenSystem es = herm_eigen(a);
  std::vector<double> f(es.values.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (es.values[i] < -neg_tol)
      throw std::domain_error("sqrt_psd: matrix is not positive semidefinite");
    f[i] = std::sqrt(std::max(0.0, es.values[i]));
  }
  return apply_spectral(es, f);
}

ComplexMatrix inv_sqrt_pd(const ComplexMatrix& a, double pos_tol) {
  EigenSystem es = herm_eigen(a);
  std::vector<double> f(es.values.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (es.values[i] <= pos_tol)
      throw std::domain_error("inv_sqrt_pd: matrix is not positive definite");
    f[i] = 1.0 / std::sqrt(es.values[i]);
  }
  return apply_spectral(es, f);
}

}  // namespace deqfi
