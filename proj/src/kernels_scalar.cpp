#include "deqfi/kernels.hpp"

// Reference kernels. These are the semantics the SIMD variants must match.

namespace deqfi::kernels::detail {

namespace {

void cgemm_scalar(std::size_t m, std::size_t k, std::size_t n,
                  const cd* a, const cd* b, cd* c) {
  for (std::size_t i = 0; i < m; ++i) {
    cd* crow = c + i * n;
    for (std::size_t j = 0; j < n; ++j) crow[j] = cd(0.0, 0.0);
    for (std::size_t l = 0; l < k; ++l) {
      const cd av = a[i * k + l];
      if (av.real() == 0.0 && av.imag() == 0.0) continue;
      const cd* brow = b + l * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

void caxpy_scalar(std::size_t len, cd alpha, const cd* x, cd* y) {
  for (std::size_t i = 0; i < len; ++i) y[i] += alpha * x[i];
}

void cscale_real_scalar(std::size_t len, const double* s, cd* x) {
  for (std::size_t i = 0; i < len; ++i) x[i] *= s[i];
}

double frob_dist_sq_scalar(std::size_t len, const cd* x, const cd* y) {
  double acc = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    const double dr = x[i].real() - y[i].real();
    const double di = x[i].imag() - y[i].imag();
    acc += dr * dr + di * di;
  }
  return acc;
}

double frob_norm_sq_scalar(std::size_t len, const cd* x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < len; ++i)
    acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return acc;
}

cd cdotc_scalar(std::size_t len, const cd* x, const cd* y) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return cd(re, im);
}

void zrot_scalar(std::size_t len, cd* x, cd* y, double c, cd s) {
  const cd ms = -std::conj(s);
  for (std::size_t i = 0; i < len; ++i) {
    const cd xi = x[i];
    const cd yi = y[i];
    x[i] = c * xi + s * yi;
    y[i] = ms * xi + c * yi;
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table = {
      cgemm_scalar,        caxpy_scalar, cscale_real_scalar,
      frob_dist_sq_scalar, frob_norm_sq_scalar,
      cdotc_scalar,        zrot_scalar,
  };
  return table;
}

}  // namespace deqfi::kernels::detail
