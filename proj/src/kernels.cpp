#include "deqfi/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace deqfi::kernels {

namespace {

using detail::KernelTable;

std::atomic<const KernelTable*> g_table{nullptr};
std::atomic<Backend> g_backend{Backend::Auto};

const KernelTable* resolve(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return &detail::scalar_table();
    case Backend::Avx2: {
      const KernelTable* t = detail::avx2_table();
      return t ? t : &detail::scalar_table();
    }
    case Backend::Auto:
    default: {
      if (const char* env = std::getenv("DEQFI_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) return &detail::scalar_table();
        if (std::strcmp(env, "avx2") == 0) {
          const KernelTable* t = detail::avx2_table();
          if (t) return t;
        }
      }
      const KernelTable* t = detail::avx2_table();
      return t ? t : &detail::scalar_table();
    }
  }
}

const KernelTable& table() {
  const KernelTable* t = g_table.load(std::memory_order_acquire);
  if (!t) {
    t = resolve(g_backend.load());
    g_table.store(t, std::memory_order_release);
  }
  return *t;
}

}  // namespace

void set_backend(Backend b) {
  g_backend.store(b);
  g_table.store(resolve(b), std::memory_order_release);
}

Backend active_backend() {
  return &table() == &detail::scalar_table() ? Backend::Scalar : Backend::Avx2;
}

const char* backend_name() {
  return active_backend() == Backend::Scalar ? "scalar" : "avx2";
}

bool avx2_available() { return detail::avx2_table() != nullptr; }

void cgemm(std::size_t m, std::size_t k, std::size_t n,
           const cd* a, const cd* b, cd* c) {
  table().cgemm(m, k, n, a, b, c);
}

void caxpy(std::size_t len, cd alpha, const cd* x, cd* y) {
  table().caxpy(len, alpha, x, y);
}

void cscale_real(std::size_t len, const double* s, cd* x) {
  table().cscale_real(len, s, x);
}

double frob_dist_sq(std::size_t len, const cd* x, const cd* y) {
  return table().frob_dist_sq(len, x, y);
}

double frob_norm_sq(std::size_t len, const cd* x) {
  return table().frob_norm_sq(len, x);
}

cd cdotc(std::size_t len, const cd* x, const cd* y) {
  return table().cdotc(len, x, y);
}

void zrot(std::size_t len, cd* x, cd* y, double c, cd s) {
  table().zrot(len, x, y, c, s);
}

}  // namespace deqfi::kernels
