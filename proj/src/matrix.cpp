#include "deqfi/matrix.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "deqfi/kernels.hpp"

namespace deqfi {

namespace {
std::atomic<double> g_default_tol{1e-9};

void check_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("matrix dimension mismatch");
}
}  // namespace

double default_tol() { return g_default_tol.load(); }
void set_default_tol(double tol) { g_default_tol.store(tol); }

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cd> entries) {
  ComplexMatrix m(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const cd> v, std::span<const cd> w) {
  if (v.size() != w.size())
    throw std::invalid_argument("outer: vector length mismatch");
  ComplexMatrix m(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j)
      m(i, j) = v[i] * std::conj(w[j]);
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  check_same_dim(*this, o);
  kernels::caxpy(a_.size(), cd(1.0, 0.0), o.data(), a_.data());
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  check_same_dim(*this, o);
  kernels::caxpy(a_.size(), cd(-1.0, 0.0), o.data(), a_.data());
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cd s) {
  for (auto& v : a_) v *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_same_dim(a, b);
  ComplexMatrix c(a.dim());
  kernels::cgemm(a.dim(), a.dim(), a.dim(), a.data(), b.data(), c.data());
  return c;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      m(j, i) = std::conj((*this)(i, j));
  return m;
}

cd ComplexMatrix::trace() const {
  cd t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  return std::sqrt(kernels::frob_norm_sq(a_.size(), a_.data()));
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : a_) m = std::max(m, std::abs(v));
  return m;
}

bool ComplexMatrix::is_finite() const {
  for (const auto& v : a_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
  return true;
}

std::vector<cd> ComplexMatrix::mul_vec(std::span<const cd> v) const {
  if (v.size() != dim_)
    throw std::invalid_argument("mul_vec: dimension mismatch");
  std::vector<cd> out(dim_);
  kernels::cgemm(dim_, dim_, 1, a_.data(), v.data(), out.data());
  return out;
}

double ComplexMatrix::distance_sq(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_same_dim(a, b);
  return kernels::frob_dist_sq(a.size(), a.data(), b.data());
}

double ComplexMatrix::distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return std::sqrt(distance_sq(a, b));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t da = a.dim(), db = b.dim();
  ComplexMatrix m(da * db);
  for (std::size_t ia = 0; ia < da; ++ia)
    for (std::size_t ja = 0; ja < da; ++ja) {
      const cd f = a(ia, ja);
      if (f == cd(0.0, 0.0)) continue;
      for (std::size_t ib = 0; ib < db; ++ib)
        for (std::size_t jb = 0; jb < db; ++jb)
          m(ia * db + ib, ja * db + jb) = f * b(ib, jb);
    }
  return m;
}

}  // namespace deqfi
