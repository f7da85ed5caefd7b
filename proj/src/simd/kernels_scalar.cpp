#include <cassert>

#include "qqinv/simd.hpp"

namespace qqinv::simd::scalar {

void add_mod(std::span<std::int64_t> dst, std::span<const std::int64_t> src, std::int64_t p) {
  assert(dst.size() == src.size());
  for (std::size_t i = 0; i < dst.size(); ++i) {
    std::int64_t s = dst[i] + src[i];
    if (s >= p) s -= p;
    dst[i] = s;
  }
}

double dot(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

}  // namespace qqinv::simd::scalar
