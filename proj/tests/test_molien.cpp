#include <algorithm>

#include "doctest.h"
#include "qqinv/molien.hpp"
#include "qqinv/types.hpp"
#include "qqinv/simd.hpp"

using namespace qqinv;

namespace {

std::vector<BigInt> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

BigInt binomial(int n, int k) {
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("adjoint weight systems") {
  const auto two = adjoint_weight_system(LocalGroup::Su2xSu2);
  CHECK(two.weights.size() == 16);
  CHECK(std::count(two.weights.begin(), two.weights.end(), Exponent{0, 0}) == 4);
  CHECK(two.representation_weights().size() == 15);
  CHECK(two.weyl_order == 4);

  const auto qq = adjoint_weight_system(LocalGroup::Su2xSu3);
  CHECK(qq.weights.size() == 36);
  CHECK(std::count(qq.weights.begin(), qq.weights.end(), Exponent{0, 0, 0}) == 6);
  CHECK(qq.representation_weights().size() == 35);
  CHECK(qq.weyl_order == 12);
  CHECK(qq.positive_roots().size() == 4);
  for (const auto& w : qq.weights) {
    Exponent neg(w.size());
    std::transform(w.begin(), w.end(), neg.begin(), [](int v) { return -v; });
    CHECK(std::count(qq.weights.begin(), qq.weights.end(), neg) == std::count(qq.weights.begin(), qq.weights.end(), w));
  }
  CHECK_THROWS_AS(parse_local_group("3x3"), RejectedInput);
}

TEST_CASE("validate rejects malformed systems") {
  WeightSystem ws;
  ws.rank = 1;
  ws.weights = {{1}};
  CHECK_THROWS_AS(validate(ws), RejectedInput);  // not self-dual
  ws.weights = {{1}, {-1}};
  ws.roots = {{2}};
  CHECK_THROWS_AS(validate(ws), RejectedInput);  // unpaired root
  ws.roots = {{2}, {-2}};
  ws.split_trivial = 1;
  CHECK_THROWS_AS(validate(ws), RejectedInput);  // no zero weight to split
  ws.split_trivial = 0;
  ws.weights = {{1, 0}, {-1, 0}};
  CHECK_THROWS_AS(validate(ws), RejectedInput);  // wrong length
}

TEST_CASE("primes and CRT") {
  const auto p = series_primes(3);
  CHECK(p[0] < (std::int64_t{1} << 62));
  CHECK(p[0] > p[1]);
  for (long v : {0L, 1L, -5L, 123456789L}) {
    std::vector<std::int64_t> r;
    for (auto q : p) r.push_back(((v % q) + q) % q);
    CHECK(crt_symmetric(r, p) == v);
  }
  const BigInt big = BigInt(1) << 150;
  std::vector<std::int64_t> r;
  for (auto q : p) r.push_back(static_cast<std::int64_t>(big % q));
  CHECK(crt_symmetric(r, p) == big);
}

TEST_CASE("torus series against a hand count") {
  // 1 / ((1 - q x)(1 - q / x)): q^d x^e has coefficient 1 iff |e| <= d and e = d mod 2.
  TruncatedTorusSeries s(1, 6, 6, series_primes(1));
  s.multiply_geometric({1});
  s.multiply_geometric({-1});
  for (int d = 0; d <= 6; ++d)
    for (int e = -6; e <= 6; ++e) CHECK(s.coefficient(d, {e}) == ((std::abs(e) <= d && (d - e) % 2 == 0) ? 1 : 0));
  CHECK(s.laurent_terms(3).size() == 4);
  CHECK(s.residue(0, 2, {40}) == 0);
  CHECK_THROWS_AS(s.multiply_geometric({2}), RejectedInput);
}

TEST_CASE("trivial group counts monomials") {
  for (int m = 1; m <= 5; ++m) {
    const auto c = molien_series(trivial_weight_system(m), 10);
    for (int d = 0; d <= 10; ++d) CHECK(c[d] == binomial(m + d - 1, d));
  }
}

TEST_CASE("SO(3) acting on its vector representation has one quadratic invariant") {
  WeightSystem ws;
  ws.rank = 1;
  ws.weights = {{1}, {0}, {-1}};
  ws.roots = {{1}, {-1}};
  ws.weyl_order = 2;
  const auto c = molien_series(ws, 12);
  for (int d = 0; d <= 12; ++d) CHECK(c[d] == (d % 2 == 0 ? 1 : 0));
}

TEST_CASE("qubit-qutrit series head") {
  const auto c = molien_series(adjoint_weight_system(LocalGroup::Su2xSu3), 4);
  CHECK(c == ints({1, 0, 3, 4, 15}));
}

TEST_CASE("two-qubit series equals the rational form through degree 20") {
  const auto c = molien_series(adjoint_weight_system(LocalGroup::Su2xSu2), 20);
  CHECK(c == rational_series(two_qubit_rational_form(), 20));
  const auto head = rational_series(two_qubit_rational_form(), 3);
  CHECK(head == ints({1, 0, 3, 2}));
}

TEST_CASE("backends, threads, prime counts and SIMD variants agree") {
  const auto ws = adjoint_weight_system(LocalGroup::Su2xSu3);
  const auto base = molien_series(ws, 10);
  MolienOptions o;
  o.backend = MolienBackend::Reduced;
  CHECK(molien_series(ws, 10, o) == base);
  o.backend = MolienBackend::Weyl;
  o.threads = 3;
  o.min_primes = 4;
  CHECK(molien_series(ws, 10, o) == base);
  simd::force_backend(simd::Backend::Scalar);
  CHECK(molien_series(ws, 10) == base);
  simd::reset_backend();
}

TEST_CASE("truncation soundness") {
  const auto ws = adjoint_weight_system(LocalGroup::Su2xSu3);
  const auto longer = molien_series(ws, 12);
  for (int n : {0, 3, 7}) {
    const auto shorter = molien_series(ws, n);
    CHECK(std::equal(shorter.begin(), shorter.end(), longer.begin()));
  }
}

TEST_CASE("resource cap") {
  const auto ws = adjoint_weight_system(LocalGroup::Su2xSu2);
  CHECK_THROWS_AS(molien_series(ws, 21), RejectedInput);
  CHECK_THROWS_AS(molien_series(ws, -1), RejectedInput);
  MolienOptions o;
  o.cap = 22;
  CHECK(molien_series(ws, 22, o).size() == 23);
  try {
    molien_series(ws, 25);
  } catch (const RejectedInput& e) {
    CHECK(std::string(e.what()).find("20") != std::string::npos);
  }
}

TEST_CASE("rational series") {
  CHECK(rational_series({ints({1}), {{1, 1}}}, 5) == ints({1, 1, 1, 1, 1, 1}));
  CHECK(rational_series({ints({1}), {{1, 2}}}, 4) == ints({1, 2, 3, 4, 5}));
  CHECK_THROWS_AS(rational_series({ints({1}), {{0, 1}}}, 3), RejectedInput);
}

TEST_CASE("palindromy") {
  CHECK(palindromy_check(two_qubit_rational_form(), -1, 15));
  CHECK_FALSE(palindromy_check(two_qubit_rational_form(), 1, 15));
  CHECK_FALSE(palindromy_check(two_qubit_rational_form(), -1, 14));

  const auto qq = qubit_qutrit_rational_form();
  CHECK(qq.inconsistencies.empty());
  CHECK(qq.form.numerator.size() == 76);
  CHECK(palindromy_check(qq.form, 1, 35));
  CHECK_FALSE(palindromy_check(qq.form, -1, 35));

  // (1 + q) / (1 - q)^2 satisfies M(1/q) = q M(q), and nothing with D = 35.
  const RationalForm small{ints({1, 1, 0}), {{1, 2}}};
  CHECK_FALSE(palindromy_check(small, 1, 35));
  CHECK_FALSE(palindromy_check(small, -1, 1));
  CHECK(palindromy_check(small, 1, 1));
  const RationalForm lopsided{ints({1, 2, 0}), {{1, 2}}};
  for (int sign : {-1, 1})
    for (int D = -5; D <= 40; ++D) CHECK_FALSE(palindromy_check(lopsided, sign, D));
}

TEST_CASE("qubit-qutrit rational form matches the reference coefficients") {
  const auto qq = qubit_qutrit_rational_form();
  CHECK(rational_series(qq.form, 16) == qubit_qutrit_poincare_reference());
}
