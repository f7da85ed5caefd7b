#include "qqinv/molien.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <stdexcept>

#include "qqinv/simd.hpp"
#include "qqinv/types.hpp"

namespace qqinv {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

Exponent negate(const Exponent& e) {
  Exponent out(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) out[i] = -e[i];
  return out;
}

bool is_zero(const Exponent& e) {
  return std::all_of(e.begin(), e.end(), [](int v) { return v == 0; });
}

// Signed subset sums of a factor list prod (1 - x^f): (sign, exponent) terms.
std::vector<std::pair<int, Exponent>> expand_root_product(const std::vector<Exponent>& factors,
                                                          int rank) {
  std::vector<std::pair<int, Exponent>> terms{{1, Exponent(rank, 0)}};
  for (const auto& f : factors) {
    const std::size_t n = terms.size();
    for (std::size_t i = 0; i < n; ++i) {
      Exponent e = terms[i].second;
      for (int j = 0; j < rank; ++j) e[j] += f[j];
      terms.emplace_back(-terms[i].first, std::move(e));
    }
  }
  return terms;
}

}  // namespace

LocalGroup parse_local_group(std::string_view text) {
  if (text == "2x2" || text == "su2xsu2") return LocalGroup::Su2xSu2;
  if (text == "2x3" || text == "su2xsu3") return LocalGroup::Su2xSu3;
  throw RejectedInput("unknown group '" + std::string(text) + "' (expected 2x2 or 2x3)");
}

std::string_view to_string(LocalGroup g) {
  return g == LocalGroup::Su2xSu2 ? "su2xsu2" : "su2xsu3";
}

MolienBackend parse_molien_backend(std::string_view text) {
  if (text == "weyl") return MolienBackend::Weyl;
  if (text == "reduced") return MolienBackend::Reduced;
  throw RejectedInput("unknown backend '" + std::string(text) + "' (expected weyl or reduced)");
}

std::vector<Exponent> WeightSystem::representation_weights() const {
  std::vector<Exponent> out;
  int skipped = 0;
  for (const auto& w : weights) {
    if (skipped < split_trivial && is_zero(w)) {
      ++skipped;
      continue;
    }
    out.push_back(w);
  }
  return out;
}

std::vector<Exponent> WeightSystem::positive_roots() const {
  std::vector<Exponent> out;
  for (const auto& r : roots) {
    auto nz = std::find_if(r.begin(), r.end(), [](int v) { return v != 0; });
    if (nz != r.end() && *nz > 0) out.push_back(r);
  }
  return out;
}

int WeightSystem::max_abs_weight_coordinate() const {
  int m = 0;
  for (const auto& w : weights)
    for (int v : w) m = std::max(m, std::abs(v));
  return m;
}

WeightSystem adjoint_weight_system(LocalGroup group) {
  WeightSystem ws;
  // u(2) adjoint torus diag(1, 1, x, 1/x)
  const std::vector<int> qubit{0, 0, 1, -1};
  if (group == LocalGroup::Su2xSu2) {
    ws.rank = 2;
    for (int a : qubit)
      for (int b : qubit) ws.weights.push_back({a, b});
    ws.roots = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    ws.weyl_order = 4;
  } else {
    ws.rank = 3;
    // u(3) adjoint torus diag(1, 1, 1, y, z, yz, 1/y, 1/z, 1/(yz))
    const std::vector<std::pair<int, int>> qutrit{{0, 0}, {0, 0}, {0, 0},  {1, 0},  {0, 1},
                                                  {1, 1}, {-1, 0}, {0, -1}, {-1, -1}};
    for (int a : qubit)
      for (const auto& [y, z] : qutrit) ws.weights.push_back({a, y, z});
    ws.roots = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1},
                {0, 1, 1}, {0, -1, -1}};
    ws.weyl_order = 12;
  }
  ws.split_trivial = 1;
  validate(ws);
  return ws;
}

WeightSystem trivial_weight_system(int dim) {
  if (dim < 0) throw RejectedInput("dimension must be non-negative");
  WeightSystem ws;
  ws.rank = 0;
  ws.weights.assign(dim, Exponent{});
  ws.weyl_order = 1;
  return ws;
}

void validate(const WeightSystem& ws) {
  auto check_len = [&](const std::vector<Exponent>& list, const char* what) {
    for (const auto& e : list)
      if (static_cast<int>(e.size()) != ws.rank)
        throw RejectedInput(std::string(what) + " vector length differs from the torus rank");
  };
  check_len(ws.weights, "weight");
  check_len(ws.roots, "root");
  if (ws.weyl_order < 1) throw RejectedInput("Weyl group order must be positive");
  for (int j = 0; j < ws.rank; ++j) {
    long sum = 0;
    for (const auto& w : ws.weights) sum += w[j];
    if (sum != 0) throw RejectedInput("weights are not self-dual (coordinate sum nonzero)");
  }
  for (const auto& r : ws.roots) {
    if (is_zero(r)) throw RejectedInput("zero root");
    const auto neg = negate(r);
    if (std::count(ws.roots.begin(), ws.roots.end(), neg) != std::count(ws.roots.begin(), ws.roots.end(), r))
      throw RejectedInput("roots do not come in +/- pairs");
  }
  const auto zeros = std::count_if(ws.weights.begin(), ws.weights.end(), is_zero);
  if (ws.split_trivial < 0 || ws.split_trivial > zeros)
    throw RejectedInput("split_trivial exceeds the number of zero weights");
}

std::vector<std::int64_t> series_primes(std::size_t count) {
  std::vector<std::int64_t> primes;
  std::uint64_t candidate = (std::uint64_t{1} << 62) - 1;
  while (primes.size() < count) {
    if (is_prime(candidate)) primes.push_back(static_cast<std::int64_t>(candidate));
    candidate -= 2;
  }
  return primes;
}

TruncatedTorusSeries::TruncatedTorusSeries(int rank, int max_q_degree, int radius,
                                           std::vector<std::int64_t> primes)
    : rank_(rank), max_degree_(max_q_degree), radius_(radius), primes_(std::move(primes)) {
  if (rank < 0 || max_q_degree < 0 || radius < 0)
    throw RejectedInput("series shape parameters must be non-negative");
  if (primes_.empty()) throw RejectedInput("at least one prime is required");
  for (auto p : primes_)
    if (p < 3 || p >= (std::int64_t{1} << 62)) throw RejectedInput("primes must lie in [3, 2^62)");
  stride_.assign(rank_, 1);
  box_ = 1;
  const std::size_t side = 2 * static_cast<std::size_t>(radius_) + 1;
  for (int j = rank_ - 1; j >= 0; --j) {
    stride_[j] = box_;
    box_ *= side;
  }
  data_.assign(primes_.size(), std::vector<std::int64_t>((max_degree_ + 1) * box_, 0));
  const std::size_t origin = flat(Exponent(rank_, 0));
  for (auto& slab : data_) slab[origin] = 1;
}

bool TruncatedTorusSeries::in_box(const Exponent& e) const {
  if (static_cast<int>(e.size()) != rank_) return false;
  return std::all_of(e.begin(), e.end(), [&](int v) { return v >= -radius_ && v <= radius_; });
}

std::size_t TruncatedTorusSeries::flat(const Exponent& e) const {
  std::size_t idx = 0;
  for (int j = 0; j < rank_; ++j) idx += static_cast<std::size_t>(e[j] + radius_) * stride_[j];
  return idx;
}

void TruncatedTorusSeries::multiply_geometric(const Exponent& w) {
  if (static_cast<int>(w.size()) != rank_) throw RejectedInput("weight length differs from rank");
  for (int v : w)
    if (std::abs(v) * max_degree_ > radius_)
      throw RejectedInput("weight does not fit the exponent box");
  // G_d = F_d + x^w G_{d-1}, ascending d, in place. Flat offsets never wrap
  // onto live data: G_{d-1} is supported within radius (d-1) max|w|.
  std::ptrdiff_t offset = 0;
  for (int j = 0; j < rank_; ++j) offset += static_cast<std::ptrdiff_t>(w[j]) * static_cast<std::ptrdiff_t>(stride_[j]);
  const std::size_t shift = static_cast<std::size_t>(offset < 0 ? -offset : offset);
  if (shift >= box_) return;
  const std::size_t len = box_ - shift;
  for (std::size_t p = 0; p < primes_.size(); ++p) {
    auto& slab = data_[p];
    for (int d = 1; d <= max_degree_; ++d) {
      std::int64_t* cur = slab.data() + static_cast<std::size_t>(d) * box_;
      const std::int64_t* prev = slab.data() + static_cast<std::size_t>(d - 1) * box_;
      if (offset >= 0)
        simd::add_mod({cur + shift, len}, {prev, len}, primes_[p]);
      else
        simd::add_mod({cur, len}, {prev + shift, len}, primes_[p]);
    }
  }
}

std::int64_t TruncatedTorusSeries::residue(std::size_t p, int d, const Exponent& e) const {
  if (d < 0 || d > max_degree_ || !in_box(e)) return 0;
  return data_.at(p)[static_cast<std::size_t>(d) * box_ + flat(e)];
}

BigInt TruncatedTorusSeries::coefficient(int d, const Exponent& e) const {
  std::vector<std::int64_t> r(primes_.size());
  for (std::size_t p = 0; p < primes_.size(); ++p) r[p] = residue(p, d, e);
  return crt_symmetric(r, primes_);
}

std::vector<std::pair<Exponent, BigInt>> TruncatedTorusSeries::laurent_terms(int d) const {
  std::vector<std::pair<Exponent, BigInt>> out;
  if (d < 0 || d > max_degree_) return out;
  const std::size_t side = 2 * static_cast<std::size_t>(radius_) + 1;
  for (std::size_t idx = 0; idx < box_; ++idx) {
    bool any = false;
    for (const auto& slab : data_) any = any || slab[static_cast<std::size_t>(d) * box_ + idx] != 0;
    if (!any) continue;
    Exponent e(rank_);
    std::size_t rest = idx;
    for (int j = 0; j < rank_; ++j) {
      e[j] = static_cast<int>(rest / stride_[j]) - radius_;
      rest %= stride_[j];
    }
    (void)side;
    out.emplace_back(e, coefficient(d, e));
  }
  return out;
}

BigInt crt_symmetric(const std::vector<std::int64_t>& residues, const std::vector<std::int64_t>& primes) {
  if (residues.size() != primes.size() || primes.empty())
    throw RejectedInput("crt: residue/prime count mismatch");
  // Garner-free direct form; the prime count is tiny.
  BigInt modulus = 1;
  for (auto p : primes) modulus *= p;
  BigInt x = 0;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const BigInt mi = modulus / primes[i];
    const auto mi_mod = static_cast<std::uint64_t>(mi % primes[i]);
    const std::uint64_t inv = powmod(mi_mod, static_cast<std::uint64_t>(primes[i]) - 2,
                                     static_cast<std::uint64_t>(primes[i]));
    const std::uint64_t coef = mulmod(static_cast<std::uint64_t>(residues[i]) % primes[i], inv,
                                      static_cast<std::uint64_t>(primes[i]));
    x += mi * coef;
  }
  x %= modulus;
  if (2 * x > modulus) x -= modulus;
  return x;
}

std::vector<BigInt> molien_series(const WeightSystem& ws, int N, const MolienOptions& options) {
  if (N < 0) throw RejectedInput("degree must be non-negative");
  if (N > options.cap)
    throw RejectedInput("degree " + std::to_string(N) + " exceeds the resource cap of " +
                        std::to_string(options.cap) + " (raise it explicitly to proceed)");
  validate(ws);

  std::vector<Exponent> weights = ws.representation_weights();
  // Positive weights first, negatives after, zero weights last.
  std::stable_sort(weights.begin(), weights.end(), [](const Exponent& l, const Exponent& r) {
    return l > r;
  });

  const std::vector<Exponent> factors =
      options.backend == MolienBackend::Weyl ? ws.roots : ws.positive_roots();
  // Reduced backend reads CT of x^{-sum} * G, i.e. G at +sum.
  auto terms = expand_root_product(options.backend == MolienBackend::Weyl ? factors : [&] {
    std::vector<Exponent> neg;
    for (const auto& f : factors) neg.push_back(negate(f));
    return neg;
  }(), ws.rank);

  // |constant term| <= 2^{#factors} * (number of degree-N monomials)
  const BigInt bound = (BigInt(1) << factors.size()) *
                       binomial(static_cast<int>(weights.size()) + N - 1, N);
  std::size_t nprimes = std::max<std::size_t>(1, options.min_primes);
  const auto all_primes = series_primes(64);
  auto product_of = [&](std::size_t k) {
    BigInt m = 1;
    for (std::size_t i = 0; i < k; ++i) m *= all_primes[i];
    return m;
  };
  while (product_of(nprimes) <= 2 * bound + 1) ++nprimes;
  const std::vector<std::int64_t> primes(all_primes.begin(), all_primes.begin() + nprimes);

  const int radius = N * ws.max_abs_weight_coordinate();

  // One series per prime; independent, so optionally run concurrently.
  auto run_prime = [&](std::int64_t p) {
    TruncatedTorusSeries series(ws.rank, N, radius, {p});
    for (const auto& w : weights) series.multiply_geometric(w);
    std::vector<std::int64_t> ct(N + 1, 0);
    for (int d = 0; d <= N; ++d) {
      std::int64_t acc = 0;
      for (const auto& [sign, e] : terms) {
        // The coefficient at -e multiplies x^e to reach x^0.
        const std::int64_t r = series.residue(0, d, negate(e));
        acc = sign > 0 ? (acc + r) % p : (acc - r + p) % p;
      }
      ct[d] = acc;
    }
    return ct;
  };

  std::vector<std::vector<std::int64_t>> per_prime(nprimes);
  if (options.threads > 1 && nprimes > 1) {
    std::vector<std::future<std::vector<std::int64_t>>> jobs;
    std::size_t next = 0;
    while (next < nprimes) {
      jobs.clear();
      const std::size_t start = next;
      for (; next < nprimes && next - start < options.threads; ++next)
        jobs.push_back(std::async(std::launch::async, run_prime, primes[next]));
      for (std::size_t j = 0; j < jobs.size(); ++j) per_prime[start + j] = jobs[j].get();
    }
  } else {
    for (std::size_t i = 0; i < nprimes; ++i) per_prime[i] = run_prime(primes[i]);
  }

  const int divisor = options.backend == MolienBackend::Weyl ? ws.weyl_order : 1;
  std::vector<BigInt> out(N + 1);
  for (int d = 0; d <= N; ++d) {
    std::vector<std::int64_t> r(nprimes);
    for (std::size_t i = 0; i < nprimes; ++i) r[i] = per_prime[i][d];
    const BigInt ct = crt_symmetric(r, primes);
    if (ct % divisor != 0)
      throw std::logic_error("constant term at degree " + std::to_string(d) +
                             " is not divisible by the Weyl group order");
    out[d] = ct / divisor;
  }
  return out;
}

std::vector<BigInt> rational_series(const RationalForm& form, int N) {
  if (N < 0) return {};
  std::vector<BigInt> c(N + 1, 0);
  for (std::size_t k = 0; k < form.numerator.size() && k <= static_cast<std::size_t>(N); ++k)
    c[k] = form.numerator[k];
  for (const auto& [degree, mult] : form.denominator) {
    if (degree < 1) throw RejectedInput("denominator degrees must be >= 1");
    if (mult < 0) throw RejectedInput("denominator multiplicities must be >= 0");
    for (int m = 0; m < mult; ++m)
      for (int k = degree; k <= N; ++k) c[k] += c[k - degree];
  }
  return c;
}

bool palindromy_check(const RationalForm& form, int sign, int top_degree) {
  const auto& num = form.numerator;
  auto lo = std::find_if(num.begin(), num.end(), [](const BigInt& v) { return v != 0; });
  if (lo == num.end()) return false;
  auto hi = std::find_if(num.rbegin(), num.rend(), [](const BigInt& v) { return v != 0; });
  const int low = static_cast<int>(lo - num.begin());
  const int high = static_cast<int>(num.size() - 1 - (hi - num.rbegin()));

  // N_k = eps * N_{low+high-k}  =>  N(1/q) = eps q^{-(low+high)} N(q)
  int eps = 0;
  for (int candidate : {1, -1}) {
    bool ok = true;
    for (int k = low; k <= high && ok; ++k) ok = num[k] == candidate * num[low + high - k];
    if (ok) {
      eps = candidate;
      break;
    }
  }
  if (eps == 0) return false;

  // D(1/q) = (-1)^{sum m} q^{-sum d m} D(q)
  long mult_sum = 0, degree_sum = 0;
  for (const auto& [d, m] : form.denominator) {
    mult_sum += m;
    degree_sum += static_cast<long>(d) * m;
  }
  const int total_sign = eps * ((mult_sum % 2 == 0) ? 1 : -1);
  const long exponent = degree_sum - (low + high);
  return total_sign == sign && exponent == top_degree;
}

RationalForm two_qubit_rational_form() {
  RationalForm f;
  for (int c : {1, 0, 0, 0, 1, 1, 3, 2, 2, 3, 1, 1, 0, 0, 0, 1}) f.numerator.emplace_back(c);
  f.denominator = {{2, 3}, {3, 2}, {4, 3}, {6, 1}};
  return f;
}

CompletedForm qubit_qutrit_rational_form() {
  // Known through q^38 plus the tail 38 q^69 + 9 q^70 + 4 q^71 + q^75.
  static const long head[] = {1,       0,       0,       0,       4,       9,       38,
                              69,      173,     347,     733,     1403,    2796,    5091,
                              9286,    16058,   27208,   44250,   70537,   108430,  163158,
                              238264,  339974,  472130,  641187,  848615,  1098643, 1388741,
                              1717327, 2075836, 2456389, 2843020, 3222408, 3575226, 3884797,
                              4133599, 4308636, 4398377, 4398377};
  static const std::pair<int, long> tail[] = {{69, 38}, {70, 9}, {71, 4}, {72, 0},
                                              {73, 0},  {74, 0}, {75, 1}};
  constexpr int top = 75;
  constexpr int known = static_cast<int>(std::size(head));

  CompletedForm out;
  out.form.numerator.assign(top + 1, 0);
  for (int k = 0; k < known; ++k) out.form.numerator[k] = head[k];
  for (int k = known; k <= top; ++k) out.form.numerator[k] = head[top - k];
  for (int k = 0; k < known; ++k) {
    if (top - k < known && head[k] != head[top - k])
      out.inconsistencies.push_back("q^" + std::to_string(k) + " and q^" + std::to_string(top - k) +
                                    " differ in the known head");
  }
  for (const auto& [k, v] : tail) {
    if (out.form.numerator[k] != v)
      out.inconsistencies.push_back("known q^" + std::to_string(k) + " coefficient " +
                                    std::to_string(v) + " disagrees with completion");
  }
  out.form.denominator = {{2, 3}, {3, 4}, {4, 5}, {5, 4}, {6, 5}, {7, 2}, {8, 1}};
  return out;
}

std::vector<BigInt> qubit_qutrit_poincare_reference() {
  std::vector<BigInt> out;
  for (long c : {1L, 0L, 3L, 4L, 15L, 25L, 90L, 170L, 489L, 1059L, 2600L, 5641L, 12872L, 27099L,
                 57990L, 118254L, 240187L})
    out.emplace_back(c);
  return out;
}

}  // namespace qqinv
