#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace deqfi {

using cd = std::complex<double>;

// Library-wide default validation tolerance. Overridable at startup
// (the CLI maps the DEQFI_TOL environment variable onto it).
double default_tol();
void set_default_tol(double tol);

/// Dense square complex matrix, row-major. The carrier for states, Kraus
/// operators, Choi matrices and Hamiltonians.
class ComplexMatrix {
 public:
  ComplexMatrix() : dim_(0) {}
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const cd> entries);
  /// Outer product v * w^dagger.
  static ComplexMatrix outer(std::span<const cd> v, std::span<const cd> w);

  std::size_t dim() const { return dim_; }
  cd& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
  const cd& operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }
  cd* data() { return a_.data(); }
  const cd* data() const { return a_.data(); }
  std::size_t size() const { return a_.size(); }

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cd s);
  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(cd s, ComplexMatrix a) { return a *= s; }
  /// Matrix product via the cgemm kernel.
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  ComplexMatrix adjoint() const;
  cd trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  bool is_finite() const;
  bool is_hermitian(double tol) const;

  std::vector<cd> mul_vec(std::span<const cd> v) const;

  /// sum_ij |a_ij - b_ij|^2, dims must match.
  static double distance_sq(const ComplexMatrix& a, const ComplexMatrix& b);
  static double distance(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t dim_;
  std::vector<cd> a_;
};

/// Kronecker product; dim = dim(a) * dim(b).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace deqfi
