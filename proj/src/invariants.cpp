#include "qqinv/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <random>
#include <set>

#include <Eigen/SVD>

#include "qqinv/casimir.hpp"
#include "qqinv/su_algebra.hpp"

namespace qqinv {

namespace {

const StructureConstants& su3_constants() {
  static const StructureConstants sc = structure_constants(build_basis(BasisLabel::Su3GellMann));
  return sc;
}

const Matrix6c& sector_of(const SectorMatrices& s, char letter) {
  switch (letter) {
    case 'a': return s.alpha;
    case 'b': return s.beta;
    default: return s.gamma;
  }
}

std::vector<SectorMatrices> panel_sectors(const PanelOptions& options) {
  std::vector<SectorMatrices> out;
  for (const auto& st : make_panel(options.seed, options.panel_size)) out.push_back(sector_matrices(st));
  return out;
}

double tr(const SectorMatrices& s, std::string_view letters) {
  return eval_trace(TraceWord::parse(letters), s).value;
}

CheckReport make_report(std::string name, const PanelOptions& options, double tolerance) {
  CheckReport r;
  r.name = std::move(name);
  r.seed = options.seed;
  r.samples = options.panel_size;
  r.tolerance = tolerance;
  return r;
}

void enumerate_raw(int d, std::string& prefix, std::set<std::string>& out) {
  if (static_cast<int>(prefix.size()) == d) {
    out.insert(canonical_letters(prefix));
    return;
  }
  for (char c : {'a', 'b', 'g'}) {
    prefix.push_back(c);
    enumerate_raw(d, prefix, out);
    prefix.pop_back();
  }
}

// Sorted multisets of words (at least two factors) whose degrees sum to d.
void product_candidates(const std::vector<TraceWord>& pool, std::size_t start, int remaining,
                        std::vector<TraceWord>& current, std::vector<std::vector<TraceWord>>& out) {
  if (remaining == 0) {
    if (current.size() >= 2) out.push_back(current);
    return;
  }
  for (std::size_t i = start; i < pool.size(); ++i) {
    if (pool[i].degree() > remaining) continue;
    current.push_back(pool[i]);
    product_candidates(pool, i, remaining - pool[i].degree(), current, out);
    current.pop_back();
  }
}

}  // namespace

std::string canonical_letters(std::string_view letters) {
  const std::string start(letters);
  std::set<std::string> seen{start};
  std::deque<std::string> queue{start};
  while (!queue.empty()) {
    const std::string w = queue.front();
    queue.pop_front();
    std::vector<std::string> moves;
    if (w.size() > 1) moves.push_back(w.substr(1) + w.front());
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if ((w[i] == 'a' && w[i + 1] == 'b') || (w[i] == 'b' && w[i + 1] == 'a')) {
        std::string s = w;
        std::swap(s[i], s[i + 1]);
        moves.push_back(std::move(s));
      }
    }
    for (auto& m : moves)
      if (seen.insert(m).second) queue.push_back(std::move(m));
  }
  return *seen.begin();
}

TraceWord TraceWord::parse(std::string_view letters) {
  if (letters.empty()) throw RejectedInput("trace word must not be empty");
  for (char c : letters)
    if (c != 'a' && c != 'b' && c != 'g')
      throw RejectedInput("trace word letter '" + std::string(1, c) + "' is not one of a, b, g");
  return TraceWord(canonical_letters(letters));
}

std::array<int, 3> TraceWord::multidegree() const {
  std::array<int, 3> m{0, 0, 0};
  for (char c : letters_) ++m[c == 'a' ? 0 : c == 'b' ? 1 : 2];
  return m;
}

std::string TraceWord::display() const {
  static const char* const greek[] = {"α", "β", "γ"};
  static const char* const sup[] = {"", "", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸"};
  std::string out;
  for (std::size_t i = 0; i < letters_.size();) {
    std::size_t j = i;
    while (j < letters_.size() && letters_[j] == letters_[i]) ++j;
    const char c = letters_[i];
    out += greek[c == 'a' ? 0 : c == 'b' ? 1 : 2];
    out += sup[j - i];
    i = j;
  }
  return out;
}

std::vector<TraceWord> enumerate_words(int d) {
  if (d < 1 || d > 8) throw RejectedInput("word degree must lie in 1..8, got " + std::to_string(d));
  std::set<std::string> classes;
  std::string prefix;
  enumerate_raw(d, prefix, classes);
  std::vector<TraceWord> out;
  for (const auto& c : classes) out.push_back(TraceWord::parse(c));
  return out;
}

TraceValue eval_trace(const TraceWord& word, const SectorMatrices& sectors) {
  const auto& letters = word.letters();
  if (letters.empty()) return {6.0, 0.0, false};
  Matrix6c prod = sector_of(sectors, letters.front());
  for (std::size_t i = 1; i < letters.size(); ++i) prod = prod * sector_of(sectors, letters[i]);
  const Complex t = prod.trace();
  return {t.real(), t.imag(), std::abs(t.imag()) >= kImaginaryFlag};
}

TraceValue eval_trace(const TraceWord& word, const QubitQutritState& state) {
  return eval_trace(word, sector_matrices(state));
}

namespace {

std::vector<TraceWord> panel_kernel(int d, std::uint64_t seed, std::size_t panel_size) {
  const auto words = enumerate_words(d);
  std::vector<double> worst(words.size(), 0.0);
  for (const auto& st : make_panel(seed, panel_size)) {
    const auto s = sector_matrices(st);
    for (std::size_t w = 0; w < words.size(); ++w)
      worst[w] = std::max(worst[w], std::abs(eval_trace(words[w], s).value));
  }
  std::vector<TraceWord> out;
  for (std::size_t w = 0; w < words.size(); ++w)
    if (worst[w] < kKernelThreshold) out.push_back(words[w]);
  return out;
}

}  // namespace

KernelResult kernel_at_degree(int d, std::uint64_t seed, std::size_t panel_size) {
  if (d < 1 || d > 6) throw RejectedInput("kernel degree must lie in 1..6, got " + std::to_string(d));
  return {panel_kernel(d, seed, panel_size), seed, panel_size};
}

std::vector<TraceWord> nonkernel_words(int d, std::uint64_t seed, std::size_t panel_size) {
  const auto all = enumerate_words(d);
  const auto kernel = panel_kernel(d, seed, panel_size);
  std::vector<TraceWord> out;
  std::set_difference(all.begin(), all.end(), kernel.begin(), kernel.end(), std::back_inserter(out));
  return out;
}

CheckReport sign_relation_check(const PanelOptions& options) {
  auto r = make_report("sign relation", options, 1e-9);
  double worst = 0.0;
  for (const auto& s : panel_sectors(options)) {
    // Spelled out as raw products so that the check does not rely on canonicalization.
    const double lhs = (s.alpha * s.beta * s.gamma * s.gamma).trace().real();
    const double rhs = (s.alpha * s.gamma * s.beta * s.gamma).trace().real();
    worst = std::max(worst, std::abs(lhs + rhs));
  }
  r.items.push_back({"tr(αβγ²) + tr(αγβγ)", worst});
  return r;
}

double gamma3_contraction(const Eigen::Matrix<double, 3, 8>& C) {
  const auto& sc = su3_constants();
  double acc = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const int eps = levi_civita(i, j, k);
        if (eps == 0) continue;
        for (int a = 0; a < 8; ++a)
          for (int b = 0; b < 8; ++b)
            for (int c = 0; c < 8; ++c) {
              const double f = sc.f(a, b, c);
              if (f != 0.0) acc += eps * f * C(i, a) * C(j, b) * C(k, c);
            }
      }
  return -4.0 * acc;
}

CheckReport gamma3_formula_check(const PanelOptions& options) {
  auto r = make_report("gamma^3 contraction", options, 1e-9);
  double worst = 0.0;
  for (const auto& st : make_panel(options.seed, options.panel_size)) {
    const auto s = sector_matrices(st);
    const double lhs = (s.gamma * s.gamma * s.gamma).trace().real();
    worst = std::max(worst, std::abs(lhs - gamma3_contraction(st.C)));
  }
  r.items.push_back({"tr(γ³) + 4 ε f c c c", worst});
  return r;
}

I004Terms i004_terms(const Eigen::Matrix<double, 3, 8>& C) {
  const auto& sc = su3_constants();
  const Eigen::Matrix<double, 8, 8> M = C.transpose() * C;
  I004Terms t;
  for (int c = 0; c < 8; ++c) {
    double v = 0.0;
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b) v += sc.d(a, b, c) * M(a, b);
    t.dd += v * v;
  }
  // f_apc f_cbq M_ab M_pq
  for (int a = 0; a < 8; ++a)
    for (int p = 0; p < 8; ++p)
      for (int c = 0; c < 8; ++c) {
        const double f1 = sc.f(a, p, c);
        if (f1 == 0.0) continue;
        for (int b = 0; b < 8; ++b)
          for (int q = 0; q < 8; ++q) {
            const double f2 = sc.f(c, b, q);
            if (f2 != 0.0) t.ff += f1 * f2 * M(a, b) * M(p, q);
          }
      }
  const double trM = M.trace();
  t.rhs = (2.0 / 3.0) * t.ff - (trM * trM - 2.0 * (M * M).trace()) / 3.0;
  return t;
}

CheckReport i004_identity_check(const PanelOptions& options) {
  auto r = make_report("I004 dd/ff identity", options, 1e-9);
  double worst = 0.0;
  for (const auto& st : make_panel(options.seed, options.panel_size)) {
    const auto t = i004_terms(st.C);
    worst = std::max(worst, std::abs(t.dd - t.rhs));
  }
  r.items.push_back({"I(dd) - (2/3) I(ff) + (1/3)[(tr M)² - 2 tr M²]", worst});
  return r;
}

CheckReport multidegree_relations_check(const PanelOptions& options) {
  auto r = make_report("multidegree relations", options, 1e-9);
  const auto& sc = su3_constants();
  double w1 = 0, w2 = 0, w3 = 0, w_ag = 0, w_ab = 0;
  for (const auto& st : make_panel(options.seed, options.panel_size)) {
    const auto s = sector_matrices(st);
    const auto& a = st.a;
    const auto& b = st.b;
    const auto& C = st.C;
    const double A2 = tr(s, "aa"), B2 = tr(s, "bb"), G2 = tr(s, "gg");

    const double r1 = tr(s, "aagg") + tr(s, "agag") - 8.0 * a.dot(C * C.transpose() * a);
    w1 = std::max(w1, std::abs(r1));

    // u_k = d_xyk b_x b_y, v_k = sum_i d_kzw c_iz c_iw, w_ki = d_xyk b_x c_iy
    Eigen::Matrix<double, 8, 1> u = Eigen::Matrix<double, 8, 1>::Zero();
    Eigen::Matrix<double, 8, 1> v = Eigen::Matrix<double, 8, 1>::Zero();
    Eigen::Matrix<double, 8, 3> w = Eigen::Matrix<double, 8, 3>::Zero();
    for (int k = 0; k < 8; ++k)
      for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y) {
          const double d = sc.d(x, y, k);
          if (d == 0.0) continue;
          u(k) += d * b(x) * b(y);
          for (int i = 0; i < 3; ++i) {
            v(k) += d * C(i, x) * C(i, y);
            w(k, i) += d * b(x) * C(i, y);
          }
        }
    const double bbgg = tr(s, "bbgg");
    w2 = std::max(w2, std::abs(bbgg - B2 * G2 / 6.0 - 4.0 * u.dot(v)));
    const double bCCb = b.dot(C.transpose() * C * b);
    w3 = std::max(w3, std::abs(bbgg + tr(s, "bgbg") - 8.0 * ((2.0 / 3.0) * bCCb + w.squaredNorm())));
    w_ag = std::max(w_ag, std::abs(tr(s, "aagg") - A2 * G2 / 6.0));
    w_ab = std::max(w_ab, std::abs(tr(s, "aabb") - A2 * B2 / 6.0));
  }
  r.items.push_back({"tr(α²γ²) + tr(αγαγ) = 8 a a c c", w1});
  r.items.push_back({"tr(β²γ²) - tr(β²)tr(γ²)/6 = 4 d d b b c c", w2});
  r.items.push_back({"tr(β²γ²) + tr(βγβγ) = 8(2/3 b b c c + d d b b c c)", w3});
  r.items.push_back({"tr(α²γ²) = tr(α²)tr(γ²)/6", w_ag});
  r.items.push_back({"tr(α²β²) = tr(α²)tr(β²)/6", w_ab});
  return r;
}

int numerical_rank(const Eigen::MatrixXd& m, double epsilon) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cutoff = static_cast<double>(std::max(m.rows(), m.cols())) * epsilon * sv(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  return rank;
}

int rank_at_degree(int d, bool include_products, std::uint64_t seed) {
  if (d < 1 || d > 6) throw RejectedInput("rank degree must lie in 1..6, got " + std::to_string(d));
  const auto words = nonkernel_words(d, seed);
  std::vector<std::vector<TraceWord>> products;
  if (include_products) {
    std::vector<TraceWord> pool;
    for (int e = 1; e < d; ++e) {
      const auto w = nonkernel_words(e, seed);
      pool.insert(pool.end(), w.begin(), w.end());
    }
    std::vector<TraceWord> current;
    product_candidates(pool, 0, d, current, products);
  }
  const std::size_t count = words.size() + products.size();
  if (count == 0) return 0;
  const std::size_t m = 2 * count;
  Eigen::MatrixXd ev(m, count);
  const auto panel = make_panel(derive_seed(seed, 0x72616e6b), m);
  for (std::size_t row = 0; row < m; ++row) {
    const auto s = sector_matrices(panel[row]);
    std::map<TraceWord, double> cache;
    auto value = [&](const TraceWord& w) {
      auto it = cache.find(w);
      if (it == cache.end()) it = cache.emplace(w, eval_trace(w, s).value).first;
      return it->second;
    };
    std::size_t col = 0;
    for (const auto& w : words) ev(row, col++) = value(w);
    for (const auto& p : products) {
      double v = 1.0;
      for (const auto& w : p) v *= value(w);
      ev(row, col++) = v;
    }
  }
  return numerical_rank(ev);
}

double invariance_test(const TraceWord& word, int trials, Conjugation kind, std::uint64_t seed) {
  if (trials < 1) throw RejectedInput("trials must be >= 1");
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto st = random_density(derive_seed(seed, 2 * t));
    const auto u = kind == Conjugation::Local ? random_local_unitary(derive_seed(seed, 2 * t + 1))
                                              : random_global_unitary(derive_seed(seed, 2 * t + 1));
    const double before = eval_trace(word, st).value;
    const double after = eval_trace(word, conjugate(st, u)).value;
    worst = std::max(worst, std::abs(after - before));
  }
  return worst;
}

double casimir_invariance_test(int k, int trials, std::uint64_t seed) {
  if (k < 2 || k > 6) throw RejectedInput("Casimir order must lie in 2..6");
  if (trials < 1) throw RejectedInput("trials must be >= 1");
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto st = random_density(derive_seed(seed, 3 * t));
    const double before = casimirs_from_traces(st).normalized_k(k);
    for (const auto& u : {random_local_unitary(derive_seed(seed, 3 * t + 1)),
                          random_global_unitary(derive_seed(seed, 3 * t + 2))}) {
      const double after = casimirs_from_traces(conjugate(st, u)).normalized_k(k);
      worst = std::max(worst, std::abs(after - before));
    }
  }
  return worst;
}

CasimirExpansion casimir_expansion(const SectorMatrices& s) {
  const double A2 = tr(s, "aa"), B2 = tr(s, "bb"), G2 = tr(s, "gg");
  CasimirExpansion e;
  e.six_c2 = A2 + B2 + G2;
  e.six_c3 = tr(s, "bbb") + tr(s, "ggg") + 3.0 * tr(s, "bgg") + 6.0 * tr(s, "abg");
  e.six_c4 = (A2 * (2.0 * B2 + G2) + B2 * B2 / 4.0 - G2 * G2 / 2.0 - B2 * G2) / 3.0 +
             4.0 * (tr(s, "aggg") + tr(s, "bggg") + tr(s, "bbgg") + tr(s, "abgg") + 3.0 * tr(s, "abbg")) +
             2.0 * (tr(s, "agag") + tr(s, "bgbg")) + tr(s, "gggg");
  return e;
}

CheckReport casimir_decomposition_check(const PanelOptions& options) {
  auto r = make_report("Casimir decomposition", options, 1e-8);
  double w2 = 0, w3 = 0, w4 = 0;
  for (const auto& st : make_panel(options.seed, options.panel_size)) {
    const auto c = casimirs_from_traces(st);
    const auto e = casimir_expansion(sector_matrices(st));
    w2 = std::max(w2, std::abs(6.0 * c.raw_k(2) - e.six_c2));
    w3 = std::max(w3, std::abs(6.0 * c.raw_k(3) - e.six_c3));
    w4 = std::max(w4, std::abs(6.0 * c.raw_k(4) - e.six_c4));
  }
  r.items.push_back({"6c2", w2});
  r.items.push_back({"6c3", w3});
  r.items.push_back({"6c4", w4});
  return r;
}

std::vector<TraceWord> listed_invariants() {
  std::vector<TraceWord> out;
  for (const char* w : {"aa", "bb", "gg", "bbb", "ggg", "abg", "bgg", "gggg", "aggg", "bggg",
                        "agag", "bbgg", "bgbg", "abbg", "abgg"})
    out.push_back(TraceWord::parse(w));
  return out;
}

Eigen::Matrix<double, 35, 1> state_parameters(const QubitQutritState& state) {
  Eigen::Matrix<double, 35, 1> p;
  p.head<3>() = state.a;
  p.segment<8>(3) = state.b;
  for (int i = 0; i < 3; ++i) p.segment<8>(11 + 8 * i) = state.C.row(i).transpose();
  return p;
}

QubitQutritState state_from_parameters(const Eigen::Matrix<double, 35, 1>& p) {
  QubitQutritState s;
  s.a = p.head<3>();
  s.b = p.segment<8>(3);
  for (int i = 0; i < 3; ++i) s.C.row(i) = p.segment<8>(11 + 8 * i).transpose();
  return s;
}

int jacobian_rank(const std::vector<TraceWord>& words, int points, std::uint64_t seed) {
  if (points < 1) throw RejectedInput("points must be >= 1");
  if (words.empty()) return 0;
  constexpr double h = 1e-5;
  const auto n = static_cast<Eigen::Index>(words.size());
  int best = 0;
  for (int pt = 0; pt < points; ++pt) {
    std::mt19937_64 rng(derive_seed(seed, 0x6a6163 + pt));
    std::uniform_real_distribution<double> dist(-0.3, 0.3);
    Eigen::Matrix<double, 35, 1> x;
    for (auto& v : x) v = dist(rng);

    auto values = [&](const Eigen::Matrix<double, 35, 1>& p) {
      const auto s = sector_matrices(state_from_parameters(p));
      Eigen::VectorXd out(n);
      for (Eigen::Index w = 0; w < n; ++w) out(w) = eval_trace(words[w], s).value;
      return out;
    };
    Eigen::MatrixXd J(n, 35);
    for (int j = 0; j < 35; ++j) {
      auto xp = x, xm = x;
      xp(j) += h;
      xm(j) -= h;
      J.col(j) = (values(xp) - values(xm)) / (2.0 * h);
    }
    for (Eigen::Index w = 0; w < n; ++w) {
      const double norm = J.row(w).norm();
      if (norm > 0.0) J.row(w) /= norm;
    }
    best = std::max(best, numerical_rank(J, kJacobianRankEpsilon));
  }
  return best;
}

int independence_evidence(int degree_cap, int points, std::uint64_t seed) {
  if (degree_cap < 1 || degree_cap > 8)
    throw RejectedInput("degree cap must lie in 1..8, got " + std::to_string(degree_cap));
  std::vector<TraceWord> words;
  for (int d = 1; d <= degree_cap; ++d) {
    const auto w = nonkernel_words(d, seed);
    words.insert(words.end(), w.begin(), w.end());
  }
  return jacobian_rank(words, points, seed);
}

}  // namespace qqinv
