#include <random>
#include <vector>

#include "doctest.h"
#include "qqinv/simd.hpp"

using namespace qqinv;

namespace {

std::vector<std::int64_t> residues(std::size_t n, std::int64_t p, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> u(0, p - 1);
  std::vector<std::int64_t> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

}  // namespace

TEST_CASE("scalar add_mod stays in range and matches 128-bit arithmetic") {
  const std::int64_t p = (std::int64_t{1} << 62) - 57;
  std::mt19937_64 rng(1);
  auto dst = residues(37, p, rng);
  const auto src = residues(37, p, rng);
  const auto before = dst;
  simd::scalar::add_mod(dst, src, p);
  for (std::size_t i = 0; i < dst.size(); ++i) {
    const auto expect = static_cast<std::int64_t>((static_cast<__int128>(before[i]) + src[i]) % p);
    CHECK(dst[i] == expect);
  }
}

TEST_CASE("add_mod edge values") {
  const std::int64_t p = 1000003;
  std::vector<std::int64_t> dst{0, p - 1, p - 1, 1, 0};
  const std::vector<std::int64_t> src{0, 1, p - 1, p - 2, p - 1};
  simd::add_mod(dst, src, p);
  CHECK(dst == std::vector<std::int64_t>{0, 0, p - 2, p - 1, p - 1});
}

#if defined(QQINV_WITH_AVX2)
TEST_CASE("AVX2 kernels agree with the scalar reference") {
  if (!simd::avx2_available()) return;
  std::mt19937_64 rng(2);
  for (std::int64_t p : {std::int64_t{3}, std::int64_t{1000003}, (std::int64_t{1} << 62) - 57}) {
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 31u, 64u, 1001u}) {
      auto a = residues(n, p, rng);
      auto b = a;
      const auto src = residues(n, p, rng);
      simd::scalar::add_mod(a, src, p);
      simd::avx2::add_mod(b, src, p);
      CHECK(a == b);
    }
  }
  std::normal_distribution<double> g;
  for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 35u, 1000u}) {
    std::vector<double> x(n), y(n);
    for (auto& v : x) v = g(rng);
    for (auto& v : y) v = g(rng);
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale += std::abs(x[i] * y[i]);
    CHECK(std::abs(simd::scalar::dot(x, y) - simd::avx2::dot(x, y)) <= 1e-14 * (1.0 + scale));
  }
}

TEST_CASE("forcing the backend switches the dispatched kernel") {
  if (!simd::avx2_available()) return;
  simd::force_backend(simd::Backend::Scalar);
  CHECK(simd::active_backend() == simd::Backend::Scalar);
  simd::force_backend(simd::Backend::Avx2);
  CHECK(simd::active_backend() == simd::Backend::Avx2);
  simd::reset_backend();
}
#endif

TEST_CASE("dot of orthogonal vectors") {
  const std::vector<double> x{1, 0, 0, 0, 0, 0, 0, 0, 2}, y{0, 1, 1, 1, 1, 1, 1, 1, 0};
  CHECK(simd::dot(x, y) == 0.0);
  CHECK(simd::dot(x, x) == 5.0);
}
