#include <atomic>
#include <stdexcept>

#include "qqinv/simd.hpp"

namespace qqinv::simd {

namespace {

Backend detect() {
  return avx2_available() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{detect()};
  return b;
}

}  // namespace

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
  }
  return "unknown";
}

bool avx2_available() {
#if defined(QQINV_WITH_AVX2)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void force_backend(Backend b) {
  if (b == Backend::Avx2 && !avx2_available())
    throw std::runtime_error("AVX2 backend requested but not available on this CPU/build");
  current().store(b, std::memory_order_relaxed);
}

void reset_backend() { current().store(detect(), std::memory_order_relaxed); }

void add_mod(std::span<std::int64_t> dst, std::span<const std::int64_t> src, std::int64_t p) {
#if defined(QQINV_WITH_AVX2)
  if (active_backend() == Backend::Avx2) return avx2::add_mod(dst, src, p);
#endif
  scalar::add_mod(dst, src, p);
}

double dot(std::span<const double> x, std::span<const double> y) {
#if defined(QQINV_WITH_AVX2)
  if (active_backend() == Backend::Avx2) return avx2::dot(x, y);
#endif
  return scalar::dot(x, y);
}

}  // namespace qqinv::simd
