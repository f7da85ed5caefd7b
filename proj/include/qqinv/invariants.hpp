#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qqinv/report.hpp"
#include "qqinv/states.hpp"

namespace qqinv {

/// A trace word over {alpha, beta, gamma}, spelled with the ASCII letters
/// 'a', 'b', 'g'. Stored in canonical form: the lexicographic minimum over the
/// closure of cyclic rotations and adjacent alpha-beta swaps.
class TraceWord {
 public:
  TraceWord() = default;

  /// Canonicalizes `letters`; throws RejectedInput on an empty word or a
  /// letter outside {a, b, g}.
  static TraceWord parse(std::string_view letters);

  const std::string& letters() const { return letters_; }
  int degree() const { return static_cast<int>(letters_.size()); }
  /// (s, t, q): counts of alpha, beta, gamma.
  std::array<int, 3> multidegree() const;
  /// Greek rendering with exponents, e.g. "α²βγ".
  std::string display() const;

  friend bool operator==(const TraceWord&, const TraceWord&) = default;
  friend auto operator<=>(const TraceWord&, const TraceWord&) = default;

 private:
  explicit TraceWord(std::string canonical) : letters_(std::move(canonical)) {}
  std::string letters_;
};

/// Canonical representative of the closure class of `letters` (no validation).
std::string canonical_letters(std::string_view letters);

/// All canonical words of length d, sorted. Requires 1 <= d <= 8.
std::vector<TraceWord> enumerate_words(int d);

struct TraceValue {
  double value = 0.0;
  double imag = 0.0;
  bool flagged = false;  // |imag| >= 1e-9
};

inline constexpr double kImaginaryFlag = 1e-9;

TraceValue eval_trace(const TraceWord& word, const SectorMatrices& sectors);
TraceValue eval_trace(const TraceWord& word, const QubitQutritState& state);

/// Seeds and panel size shared by the panel-based checks.
inline constexpr std::uint64_t kInvariantPanelSeed = 1234567;
inline constexpr std::size_t kInvariantPanelSize = 200;
inline constexpr double kKernelThreshold = 1e-9;

struct KernelResult {
  std::vector<TraceWord> words;
  std::uint64_t seed = 0;
  std::size_t panel_size = 0;
};

/// Canonical words of degree d whose trace is below 1e-9 in absolute value on
/// every state of a seeded random panel. Requires 1 <= d <= 6.
KernelResult kernel_at_degree(int d, std::uint64_t seed = kInvariantPanelSeed,
                              std::size_t panel_size = kInvariantPanelSize);

/// Canonical words of degree d (1..8) that are not in the panel kernel.
std::vector<TraceWord> nonkernel_words(int d, std::uint64_t seed = kInvariantPanelSeed,
                                       std::size_t panel_size = kInvariantPanelSize);

struct PanelOptions {
  std::uint64_t seed = kInvariantPanelSeed;
  std::size_t panel_size = kInvariantPanelSize;
};

/// tr(alpha beta gamma^2) = -tr(alpha gamma beta gamma).
CheckReport sign_relation_check(const PanelOptions& options = {});

/// tr(gamma^3) = -4 eps_ijk f_abc c_ia c_jb c_kc.
CheckReport gamma3_formula_check(const PanelOptions& options = {});
double gamma3_contraction(const Eigen::Matrix<double, 3, 8>& C);

/// I(dd) = (2/3) I(ff) - (1/3) [(tr M)^2 - 2 tr(M^2)], M = C^T C.
CheckReport i004_identity_check(const PanelOptions& options = {});
struct I004Terms {
  double dd = 0.0;
  double ff = 0.0;
  double rhs = 0.0;  // (2/3) ff - (1/3)[(tr M)^2 - 2 tr M^2]
};
I004Terms i004_terms(const Eigen::Matrix<double, 3, 8>& C);

/// The three same-multidegree relations, the inline alpha^2 gamma^2 product
/// relation and the alpha^2 beta^2 product relation.
CheckReport multidegree_relations_check(const PanelOptions& options = {});

/// Numerical rank of the evaluation matrix of the degree-d candidates
/// (non-kernel words, plus products of lower-degree non-kernel words when
/// include_products). Requires 1 <= d <= 6.
int rank_at_degree(int d, bool include_products, std::uint64_t seed = kInvariantPanelSeed);

/// Singular-value rank with cutoff max(rows, cols) * epsilon * sigma_max.
int numerical_rank(const Eigen::MatrixXd& m, double epsilon = 1e-12);

/// Central differences with step 1e-5 carry errors near 1e-10 relative to
/// the gradient scale; the Jacobian cut sits well above that.
inline constexpr double kJacobianRankEpsilon = 1e-8;

enum class Conjugation { Local, Global };

/// Max |f(U rho U^dag) - f(rho)| over `trials` random states and unitaries.
double invariance_test(const TraceWord& word, int trials, Conjugation kind,
                       std::uint64_t seed = kInvariantPanelSeed);
/// Normalized Casimir C_k (k = 2..6), tested under both local and global
/// conjugations; returns the larger deviation.
double casimir_invariance_test(int k, int trials, std::uint64_t seed = kInvariantPanelSeed);

/// Local-invariant expansions of 6c_2, 6c_3, 6c_4 against the trace route.
CheckReport casimir_decomposition_check(const PanelOptions& options = {});
struct CasimirExpansion {
  double six_c2 = 0.0;
  double six_c3 = 0.0;
  double six_c4 = 0.0;
};
CasimirExpansion casimir_expansion(const SectorMatrices& sectors);

/// The 3 + 4 + 8 degree-2..4 invariants listed as not being products of lower ones.
std::vector<TraceWord> listed_invariants();

/// Max Jacobian rank of the given words over `points` random points with
/// parameters in [-0.3, 0.3] (central differences, step 1e-5, rows
/// normalized, cutoff epsilon kJacobianRankEpsilon).
int jacobian_rank(const std::vector<TraceWord>& words, int points, std::uint64_t seed);

/// jacobian_rank over every non-kernel canonical word up to degree_cap (1..8).
int independence_evidence(int degree_cap, int points = 3, std::uint64_t seed = kInvariantPanelSeed);

/// The 35 real parameters (a, b, C row-major) and back.
Eigen::Matrix<double, 35, 1> state_parameters(const QubitQutritState& state);
QubitQutritState state_from_parameters(const Eigen::Matrix<double, 35, 1>& p);

}  // namespace qqinv
