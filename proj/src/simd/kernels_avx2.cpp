// Compiled with -mavx2 -mfma; only reached through the dispatcher after a
// runtime CPU check.
#include <immintrin.h>

#include <cassert>

#include "qqinv/simd.hpp"

namespace qqinv::simd::avx2 {

void add_mod(std::span<std::int64_t> dst, std::span<const std::int64_t> src, std::int64_t p) {
  assert(dst.size() == src.size());
  const std::size_t n = dst.size();
  const __m256i vp = _mm256_set1_epi64x(p);
  const __m256i vpm1 = _mm256_set1_epi64x(p - 1);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst.data() + i));
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src.data() + i));
    __m256i s = _mm256_add_epi64(a, b);
    __m256i over = _mm256_cmpgt_epi64(s, vpm1);
    s = _mm256_sub_epi64(s, _mm256_and_si256(over, vp));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst.data() + i), s);
  }
  for (; i < n; ++i) {
    std::int64_t s = dst[i] + src[i];
    if (s >= p) s -= p;
    dst[i] = s;
  }
}

double dot(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  const std::size_t n = x.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x.data() + i), _mm256_loadu_pd(y.data() + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x.data() + i + 4), _mm256_loadu_pd(y.data() + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x.data() + i), _mm256_loadu_pd(y.data() + i), acc0);
  }
  acc0 = _mm256_add_pd(acc0, acc1);
  __m128d lo = _mm256_castpd256_pd128(acc0);
  __m128d hi = _mm256_extractf128_pd(acc0, 1);
  lo = _mm_add_pd(lo, hi);
  lo = _mm_add_sd(lo, _mm_unpackhi_pd(lo, lo));
  double acc = _mm_cvtsd_f64(lo);
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

}  // namespace qqinv::simd::avx2
