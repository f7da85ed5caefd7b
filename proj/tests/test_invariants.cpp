#include <map>
#include <numeric>
#include <random>

#include "doctest.h"
#include "qqinv/casimir.hpp"
#include "qqinv/invariants.hpp"

using namespace qqinv;

namespace {

// Union-find over all 3^d raw words joined by rotation and adjacent a/b swaps.
int class_count_oracle(int d) {
  int total = 1;
  for (int i = 0; i < d; ++i) total *= 3;
  std::vector<int> parent(total);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto digits = [&](int x) {
    std::vector<int> v(d);
    for (int i = d - 1; i >= 0; --i, x /= 3) v[i] = x % 3;
    return v;
  };
  auto encode = [&](const std::vector<int>& v) {
    int x = 0;
    for (int t : v) x = 3 * x + t;
    return x;
  };
  for (int x = 0; x < total; ++x) {
    auto v = digits(x);
    std::vector<int> rot(v.begin() + 1, v.end());
    rot.push_back(v.front());
    parent[find(x)] = find(encode(rot));
    for (int i = 0; i + 1 < d; ++i) {
      if (v[i] + v[i + 1] == 1) {  // letters 0 and 1 are alpha and beta
        auto w = v;
        std::swap(w[i], w[i + 1]);
        parent[find(x)] = find(encode(w));
      }
    }
  }
  int classes = 0;
  for (int x = 0; x < total; ++x) classes += find(x) == x;
  return classes;
}

std::vector<std::string> letters_of(const std::vector<TraceWord>& w) {
  std::vector<std::string> out;
  for (const auto& t : w) out.push_back(t.letters());
  return out;
}

}  // namespace

TEST_CASE("canonical forms") {
  CHECK(TraceWord::parse("ba").letters() == "ab");
  CHECK(TraceWord::parse("gba").letters() == "abg");
  CHECK(TraceWord::parse("gab").letters() == "abg");  // rotation then swap
  CHECK(TraceWord::parse("gbgb").letters() == "bgbg");
  CHECK(TraceWord::parse("aabg").display() == "α²βγ");
  CHECK(TraceWord::parse("bgg").multidegree() == std::array<int, 3>{0, 1, 2});
  CHECK_THROWS_AS(TraceWord::parse(""), RejectedInput);
  CHECK_THROWS_AS(TraceWord::parse("abc"), RejectedInput);
}

TEST_CASE("word enumeration") {
  CHECK(letters_of(enumerate_words(1)) == std::vector<std::string>{"a", "b", "g"});
  CHECK(letters_of(enumerate_words(2)) == std::vector<std::string>{"aa", "ab", "ag", "bb", "bg", "gg"});
  const auto four = letters_of(enumerate_words(4));
  CHECK(four == std::vector<std::string>{"aaaa", "aaab", "aaag", "aabb", "aabg", "aagg", "abbb", "abbg", "abgg",
                                         "agag", "agbg", "aggg", "bbbb", "bbbg", "bbgg", "bgbg", "bggg", "gggg"});
  for (int d = 1; d <= 8; ++d) CHECK(enumerate_words(d).size() == static_cast<std::size_t>(class_count_oracle(d)));
  CHECK_THROWS_AS(enumerate_words(0), RejectedInput);
  CHECK_THROWS_AS(enumerate_words(9), RejectedInput);
}

TEST_CASE("canonicalization soundness: class members evaluate identically") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> letter(0, 2), len(2, 8);
  const char alphabet[] = {'a', 'b', 'g'};
  const auto panel = make_panel(99, 20);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    std::string raw(len(rng), 'a');
    for (auto& c : raw) c = alphabet[letter(rng)];
    const auto canon = TraceWord::parse(raw);
    for (const auto& st : panel) {
      const auto sec = sector_matrices(st);
      Matrix6c prod = Matrix6c::Identity();
      for (char c : raw) prod = prod * (c == 'a' ? sec.alpha : c == 'b' ? sec.beta : sec.gamma);
      worst = std::max(worst, std::abs(prod.trace() - Complex(eval_trace(canon, sec).value, eval_trace(canon, sec).imag)));
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("trace evaluation examples") {
  QubitQutritState s;
  s.a = {1, 0, 0};
  CHECK(eval_trace(TraceWord::parse("aa"), s).value == doctest::Approx(6.0));
  for (const auto& st : make_panel(5, 100)) {
    const auto sec = sector_matrices(st);
    CHECK(std::abs(eval_trace(TraceWord::parse("ab"), sec).value) < 1e-12);
    const double lhs = eval_trace(TraceWord::parse("aabb"), sec).value;
    const double rhs = eval_trace(TraceWord::parse("aa"), sec).value * eval_trace(TraceWord::parse("bb"), sec).value / 6;
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("kernels") {
  CHECK(letters_of(kernel_at_degree(1).words) == std::vector<std::string>{"a", "b", "g"});
  CHECK(letters_of(kernel_at_degree(2).words) == std::vector<std::string>{"ab", "ag", "bg"});
  const auto k4 = kernel_at_degree(4);
  CHECK(letters_of(k4.words) == std::vector<std::string>{"aaab", "aaag", "aabg", "abbb", "bbbg"});
  CHECK(k4.seed == kInvariantPanelSeed);
  CHECK(k4.panel_size == 200);
  CHECK(letters_of(nonkernel_words(3)) == std::vector<std::string>{"abg", "bbb", "bgg", "ggg"});
  CHECK_THROWS_AS(kernel_at_degree(7), RejectedInput);
}

TEST_CASE("identity checks on the default panel") {
  CHECK(sign_relation_check().passed());
  CHECK(gamma3_formula_check().passed());
  CHECK(i004_identity_check().passed());
  const auto md = multidegree_relations_check();
  CHECK(md.passed());
  CHECK(md.items.size() == 5);
  CHECK(casimir_decomposition_check().passed());
}

TEST_CASE("sign relation spot value") {
  const auto sec = sector_matrices(random_density(17));
  const double lhs = (sec.alpha * sec.beta * sec.gamma * sec.gamma).trace().real();
  const double rhs = (sec.alpha * sec.gamma * sec.beta * sec.gamma).trace().real();
  CHECK(std::abs(lhs + rhs) < 1e-12);
  QubitQutritState no_c = random_density(17);
  no_c.C.setZero();
  CHECK(std::abs(eval_trace(TraceWord::parse("abgg"), no_c).value) == 0.0);
}

TEST_CASE("gamma^3 contraction special cases") {
  CHECK(gamma3_contraction(Eigen::Matrix<double, 3, 8>::Zero()) == 0.0);
  Eigen::Vector3d u(0.3, -0.1, 0.2);
  Eigen::Matrix<double, 8, 1> v;
  v << 0.1, 0.2, -0.3, 0.05, 0.0, 0.4, -0.2, 0.1;
  const Eigen::Matrix<double, 3, 8> rank_one = u * v.transpose();
  CHECK(std::abs(gamma3_contraction(rank_one)) < 1e-15);
  QubitQutritState s;
  s.C = rank_one;
  CHECK(std::abs(eval_trace(TraceWord::parse("ggg"), s).value) < 1e-14);
}

TEST_CASE("I004 special cases") {
  const auto zero = i004_terms(Eigen::Matrix<double, 3, 8>::Zero());
  CHECK(zero.dd == 0.0);
  CHECK(zero.rhs == 0.0);
  Eigen::Matrix<double, 3, 8> C = Eigen::Matrix<double, 3, 8>::Zero();
  C(0, 2) = 1.0;
  const auto t = i004_terms(C);
  // M = e3 e3^T: I(dd) = sum_c d_33c^2 = d_338^2 = 1/3, I(ff) = 0
  CHECK(t.dd == doctest::Approx(1.0 / 3.0));
  CHECK(std::abs(t.ff) < 1e-15);
  CHECK(std::abs(t.dd - t.rhs) < 1e-12);
}

TEST_CASE("Casimir expansion on simple states") {
  const auto mixed = casimir_expansion(sector_matrices(QubitQutritState{}));
  CHECK(mixed.six_c2 == 0.0);
  CHECK(mixed.six_c3 == 0.0);
  CHECK(mixed.six_c4 == 0.0);
  QubitQutritState a_only;
  a_only.a = {0.2, 0.1, -0.3};
  CHECK(casimir_expansion(sector_matrices(a_only)).six_c2 == doctest::Approx(6 * a_only.a.squaredNorm()));
  CHECK(6 * casimirs_from_traces(a_only).raw_k(2) == doctest::Approx(6 * a_only.a.squaredNorm()));
}

TEST_CASE("ranks of trace-word evaluation matrices") {
  CHECK(rank_at_degree(2, false) == 3);
  CHECK(rank_at_degree(3, false) == 4);
  CHECK(rank_at_degree(4, false) == 12);
  // tr a^4, tr b^4, tr a^2b^2, tr a^2g^2 are products of quadratic traces,
  // so the six quadratic products add only two new directions.
  for (const auto& st : make_panel(8, 20)) {
    const auto s = sector_matrices(st);
    auto tr = [&](const char* w) { return eval_trace(TraceWord::parse(w), s).value; };
    CHECK(std::abs(tr("aaaa") - tr("aa") * tr("aa") / 6) < 1e-12);
    CHECK(std::abs(tr("bbbb") - tr("bb") * tr("bb") / 4) < 1e-12);
    CHECK(std::abs(tr("aagg") - tr("aa") * tr("gg") / 6) < 1e-12);
  }
  CHECK(rank_at_degree(4, true) == 14);
  CHECK_THROWS_AS(rank_at_degree(7, false), RejectedInput);
}

TEST_CASE("numerical rank") {
  Eigen::MatrixXd m(3, 2);
  m << 1, 2, 2, 4, 3, 6;
  CHECK(numerical_rank(m) == 1);
  CHECK(numerical_rank(Eigen::MatrixXd::Zero(3, 3)) == 0);
  CHECK(numerical_rank(Eigen::MatrixXd::Identity(4, 4)) == 4);
}

TEST_CASE("invariance") {
  CHECK(invariance_test(TraceWord::parse("gggg"), 100, Conjugation::Local) < 1e-9);
  CHECK(casimir_invariance_test(2, 100) < 1e-9);
  CHECK(invariance_test(TraceWord::parse("aa"), 20, Conjugation::Global) > 1e-6);
  CHECK_THROWS_AS(invariance_test(TraceWord::parse("aa"), 0, Conjugation::Local), RejectedInput);
}

TEST_CASE("parameters roundtrip") {
  const auto s = random_density(21);
  const auto back = state_from_parameters(state_parameters(s));
  CHECK(back.a == s.a);
  CHECK(back.b == s.b);
  CHECK(back.C == s.C);
}

TEST_CASE("Jacobian ranks") {
  CHECK(listed_invariants().size() == 15);
  CHECK(independence_evidence(2) == 3);
  CHECK(jacobian_rank(listed_invariants(), 3, 11) == 15);
  for (int cap = 1; cap <= 6; ++cap) CHECK(independence_evidence(cap) <= 24);
  CHECK_THROWS_AS(independence_evidence(9), RejectedInput);
}
