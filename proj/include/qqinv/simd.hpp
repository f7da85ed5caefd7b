#pragma once

#include <cstdint>
#include <span>
#include <string_view>

// Data-parallel inner kernels. Every kernel has a portable scalar reference
// and, on x86-64, an AVX2 variant; the dispatching entry points pick one at
// runtime. Tests compare the variants against each other directly.

namespace qqinv::simd {

enum class Backend { Scalar, Avx2 };

std::string_view backend_name(Backend b);

/// True when the AVX2 variant was compiled in and the CPU reports AVX2.
bool avx2_available();

/// Backend used by the dispatching entry points.
Backend active_backend();

/// Overrides runtime detection (tests and benchmarking). Requesting Avx2 on a
/// machine without it throws std::runtime_error.
void force_backend(Backend b);

/// Restores runtime detection.
void reset_backend();

// dst[i] = (dst[i] + src[i]) mod p, lanes holding residues in [0, p), p < 2^62.
void add_mod(std::span<std::int64_t> dst, std::span<const std::int64_t> src, std::int64_t p);

double dot(std::span<const double> x, std::span<const double> y);

namespace scalar {
void add_mod(std::span<std::int64_t> dst, std::span<const std::int64_t> src, std::int64_t p);
double dot(std::span<const double> x, std::span<const double> y);
}  // namespace scalar

#if defined(QQINV_WITH_AVX2)
namespace avx2 {
void add_mod(std::span<std::int64_t> dst, std::span<const std::int64_t> src, std::int64_t p);
double dot(std::span<const double> x, std::span<const double> y);
}  // namespace avx2
#endif

}  // namespace qqinv::simd
