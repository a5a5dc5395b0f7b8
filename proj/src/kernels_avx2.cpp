#include "deqfi/kernels.hpp"

// AVX2 kernels. One __m256d holds two interleaved complex<double> values
// [re0, im0, re1, im1]. This translation unit is compiled with
// -mavx2 -mfma; it is only entered after a runtime cpuid check.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace deqfi::kernels::detail {

namespace {

inline const double* dptr(const cd* p) { return reinterpret_cast<const double*>(p); }
inline double* dptr(cd* p) { return reinterpret_cast<double*>(p); }

// scalar a times vector of two complex values b
inline __m256d cmul_scalar_vec(__m256d are, __m256d aim, __m256d b) {
  const __m256d t1 = _mm256_mul_pd(b, are);
  const __m256d bsw = _mm256_shuffle_pd(b, b, 0x5);  // [im0, re0, im1, re1]
  const __m256d t2 = _mm256_mul_pd(bsw, aim);
  // even lanes: re*re - im*im, odd lanes: im*re + re*im
  return _mm256_addsub_pd(t1, t2);
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void cgemm_avx2(std::size_t m, std::size_t k, std::size_t n,
                const cd* a, const cd* b, cd* c) {
  const std::size_t n2 = n & ~std::size_t(1);
  for (std::size_t i = 0; i < m; ++i) {
    cd* crow = c + i * n;
    for (std::size_t j = 0; j < n; ++j) crow[j] = cd(0.0, 0.0);
    double* cr = dptr(crow);
    for (std::size_t l = 0; l < k; ++l) {
      const cd av = a[i * k + l];
      if (av.real() == 0.0 && av.imag() == 0.0) continue;
      const __m256d are = _mm256_set1_pd(av.real());
      const __m256d aim = _mm256_set1_pd(av.imag());
      const double* br = dptr(b + l * n);
      std::size_t j = 0;
      for (; j < n2; j += 2) {
        const __m256d bv = _mm256_loadu_pd(br + 2 * j);
        const __m256d acc = _mm256_loadu_pd(cr + 2 * j);
        _mm256_storeu_pd(cr + 2 * j, _mm256_add_pd(acc, cmul_scalar_vec(are, aim, bv)));
      }
      for (; j < n; ++j) crow[j] += av * b[l * n + j];
    }
  }
}

void caxpy_avx2(std::size_t len, cd alpha, const cd* x, cd* y) {
  const __m256d are = _mm256_set1_pd(alpha.real());
  const __m256d aim = _mm256_set1_pd(alpha.imag());
  const std::size_t len2 = len & ~std::size_t(1);
  const double* xr = dptr(x);
  double* yr = dptr(y);
  std::size_t i = 0;
  for (; i < len2; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xr + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yr + 2 * i);
    _mm256_storeu_pd(yr + 2 * i, _mm256_add_pd(yv, cmul_scalar_vec(are, aim, xv)));
  }
  for (; i < len; ++i) y[i] += alpha * x[i];
}

void cscale_real_avx2(std::size_t len, const double* s, cd* x) {
  const std::size_t len2 = len & ~std::size_t(1);
  double* xr = dptr(x);
  std::size_t i = 0;
  for (; i < len2; i += 2) {
    // duplicate [s0, s1] into [s0, s0, s1, s1]
    const __m256d sv = _mm256_permute4x64_pd(
        _mm256_castpd128_pd256(_mm_loadu_pd(s + i)), 0x50);
    const __m256d xv = _mm256_loadu_pd(xr + 2 * i);
    _mm256_storeu_pd(xr + 2 * i, _mm256_mul_pd(xv, sv));
  }
  for (; i < len; ++i) x[i] *= s[i];
}

double frob_dist_sq_avx2(std::size_t len, const cd* x, const cd* y) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t len2 = len & ~std::size_t(1);
  const double* xr = dptr(x);
  const double* yr = dptr(y);
  std::size_t i = 0;
  for (; i < len2; i += 2) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(xr + 2 * i),
                                    _mm256_loadu_pd(yr + 2 * i));
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  double tail = 0.0;
  for (; i < len; ++i) {
    const double dr = x[i].real() - y[i].real();
    const double di = x[i].imag() - y[i].imag();
    tail += dr * dr + di * di;
  }
  return hsum(acc) + tail;
}

double frob_norm_sq_avx2(std::size_t len, const cd* x) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t len2 = len & ~std::size_t(1);
  const double* xr = dptr(x);
  std::size_t i = 0;
  for (; i < len2; i += 2) {
    const __m256d v = _mm256_loadu_pd(xr + 2 * i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double tail = 0.0;
  for (; i < len; ++i)
    tail += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return hsum(acc) + tail;
}

cd cdotc_avx2(std::size_t len, const cd* x, const cd* y) {
  __m256d acc_re = _mm256_setzero_pd();   // xre*yre, xim*yim pairs
  __m256d acc_im = _mm256_setzero_pd();   // xim*yre, xre*yim pairs
  const std::size_t len2 = len & ~std::size_t(1);
  const double* xr = dptr(x);
  const double* yr = dptr(y);
  std::size_t i = 0;
  for (; i < len2; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xr + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yr + 2 * i);
    acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
    const __m256d xsw = _mm256_shuffle_pd(xv, xv, 0x5);
    acc_im = _mm256_fmadd_pd(xsw, yv, acc_im);
  }
  // real part: sum of all lanes of acc_re
  // imag part: odd lanes minus even lanes of acc_im
  alignas(32) double buf[4];
  _mm256_store_pd(buf, acc_im);
  double re = hsum(acc_re);
  double im = (buf[1] - buf[0]) + (buf[3] - buf[2]);
  for (; i < len; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return cd(re, im);
}

void zrot_avx2(std::size_t len, cd* x, cd* y, double c, cd s) {
  const __m256d cv = _mm256_set1_pd(c);
  const __m256d sre = _mm256_set1_pd(s.real());
  const __m256d sim = _mm256_set1_pd(s.imag());
  // -conj(s) = (-s.re, s.im)
  const __m256d msre = _mm256_set1_pd(-s.real());
  const __m256d msim = _mm256_set1_pd(s.imag());
  const std::size_t len2 = len & ~std::size_t(1);
  double* xr = dptr(x);
  double* yr = dptr(y);
  std::size_t i = 0;
  for (; i < len2; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xr + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yr + 2 * i);
    const __m256d nx = _mm256_fmadd_pd(xv, cv, cmul_scalar_vec(sre, sim, yv));
    const __m256d ny = _mm256_fmadd_pd(yv, cv, cmul_scalar_vec(msre, msim, xv));
    _mm256_storeu_pd(xr + 2 * i, nx);
    _mm256_storeu_pd(yr + 2 * i, ny);
  }
  const cd ms = -std::conj(s);
  for (; i < len; ++i) {
    const cd xi = x[i];
    const cd yi = y[i];
    x[i] = c * xi + s * yi;
    y[i] = ms * xi + c * yi;
  }
}

}  // namespace

const KernelTable* avx2_table() {
  if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma"))
    return nullptr;
  static const KernelTable table = {
      cgemm_avx2,        caxpy_avx2, cscale_real_avx2,
      frob_dist_sq_avx2, frob_norm_sq_avx2,
      cdotc_avx2,        zrot_avx2,
  };
  return &table;
}

}  // namespace deqfi::kernels::detail

#else  // non-x86 targets fall back to the scalar reference kernels

namespace deqfi::kernels::detail {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace deqfi::kernels::detail

#endif
