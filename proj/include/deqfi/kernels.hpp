#pragma once

#include <complex>
#include <cstddef>

// Low-level arithmetic kernels for interleaved complex<double> arrays.
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2 variant. The backend is chosen once at runtime (cpuid, overridable
// via set_backend or the DEQFI_SIMD environment variable) and the two
// implementations are equivalence-tested against each other.

namespace deqfi::kernels {

using cd = std::complex<double>;

enum class Backend { Auto, Scalar, Avx2 };

// Select the implementation used by the kernels below. Auto picks the
// widest instruction set the CPU supports. Thread-safe only if called
// before concurrent kernel use.
void set_backend(Backend b);

// The resolved backend (never Auto).
Backend active_backend();
const char* backend_name();

// True if the running CPU can execute the AVX2 variants.
bool avx2_available();

// c[m x n] = a[m x k] * b[k x n], row-major, no aliasing.
void cgemm(std::size_t m, std::size_t k, std::size_t n,
           const cd* a, const cd* b, cd* c);

// y[i] += alpha * x[i]
void caxpy(std::size_t len, cd alpha, const cd* x, cd* y);

// x[i] *= s[i] for a real scale profile s.
void cscale_real(std::size_t len, const double* s, cd* x);

// sum_i |x[i] - y[i]|^2
double frob_dist_sq(std::size_t len, const cd* x, const cd* y);

// sum_i |x[i]|^2
double frob_norm_sq(std::size_t len, const cd* x);

// sum_i conj(x[i]) * y[i]
cd cdotc(std::size_t len, const cd* x, const cd* y);

// Complex plane rotation with real cosine:
//   (x[i], y[i]) <- (c*x[i] + s*y[i], -conj(s)*x[i] + c*y[i])
void zrot(std::size_t len, cd* x, cd* y, double c, cd s);

namespace detail {

struct KernelTable {
  void (*cgemm)(std::size_t, std::size_t, std::size_t, const cd*, const cd*, cd*);
  void (*caxpy)(std::size_t, cd, const cd*, cd*);
  void (*cscale_real)(std::size_t, const double*, cd*);
  double (*frob_dist_sq)(std::size_t, const cd*, const cd*);
  double (*frob_norm_sq)(std::size_t, const cd*);
  cd (*cdotc)(std::size_t, const cd*, const cd*);
  void (*zrot)(std::size_t, cd*, cd*, double, cd);
};

const KernelTable& scalar_table();
// Null when the build target or the running CPU lacks AVX2.
const KernelTable* avx2_table();

}  // namespace detail

}  // namespace deqfi::kernels
