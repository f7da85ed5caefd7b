#pragma once

#include <array>
#include <optional>
#include <vector>

#include "qqinv/report.hpp"
#include "qqinv/states.hpp"
#include "qqinv/su_algebra.hpp"

namespace qqinv {

/// Casimir invariants c_2..c_6 and their normalized forms
/// C_k = (k-1)! / ((n-1)(n-2)...(n-k+1)) c_k.
struct CasimirValues {
  int n = 0;
  std::array<double, 5> raw{};         // c_2 .. c_6
  std::array<double, 5> normalized{};  // C_2 .. C_6, NaN where k > n

  double raw_k(int k) const { return raw.at(k - 2); }
  double normalized_k(int k) const { return normalized.at(k - 2); }
};

/// (k-1)! / ((n-1)(n-2)...(n-k+1)); NaN when k > n.
double casimir_normalization(int n, int k);

/// Builds CasimirValues from raw c_2..c_6, filling the normalized entries.
CasimirValues make_casimir_values(int n, const std::array<double, 5>& raw);

/// (u v v)_a = kappa d_abc u_b v_c with kappa = sqrt(n(n-1)/2).
RVector vee(const RVector& u, const RVector& v, const StructureConstants& sc);

/// Trace route: c_k obtained by inverting the tr(omega^k) relations,
/// omega = n rho - I. rho must be square with unit trace (to 1e-9).
CasimirValues casimirs_from_traces(const CMatrix& rho);
CasimirValues casimirs_from_traces(const QubitQutritState& state);

/// Vee route on a Bloch vector. c_6 uses the left-associated reading
/// (n-1) |(xi v xi) v xi|^2.
CasimirValues casimirs_from_vee(const RVector& xi, const StructureConstants& sc);

/// Characteristic-polynomial coefficients S_1..S_m from moments t_1..t_m via
/// Newton's identities. t_1 must be within 1e-9 of 1.
std::vector<double> char_poly_coeffs(const std::vector<double>& moments);

/// Same coefficients from the k x k determinant of moments (cross-check).
std::vector<double> char_poly_coeffs_determinant(const std::vector<double>& moments);

/// t_k = tr(rho^k), k = 1..m.
std::vector<double> moments(const CMatrix& rho, int m);

/// binom(n, n-k) / n^k, the value of S_k at rho = I/n.
double max_char_coeff(int n, int k);

/// E_k = offset + slope * Sbar_k relating the bracketed Casimir expressions to
/// the normalized characteristic coefficients (k = 2..6). Determined
/// numerically by fit_expression_map and frozen here.
struct AffineLink {
  double offset;
  double slope;
};
inline constexpr std::array<AffineLink, 5> kExpressionLink{
    {{1.0, -1.0}, {1.0, -1.0}, {1.0, -1.0}, {0.0, 1.0}, {0.0, 1.0}}};

/// Least-squares fit of E_k against Sbar_k over the given matrices.
std::array<AffineLink, 5> fit_expression_map(const std::vector<CMatrix>& samples);

/// The five bracketed expressions of the su(6) positivity inequalities,
/// evaluated from normalized Casimirs.
std::array<double, 5> casimir_expressions(const CasimirValues& c);

inline constexpr double kPositivityTolerance = 1e-9;

struct PositivityReport {
  std::vector<double> t;              // t_1..t_6
  std::vector<double> S;              // S_1..S_6
  std::vector<double> S_bar;          // Sbar_2..Sbar_6
  std::array<double, 5> casimir_exprs{};
  std::vector<bool> verdict_S;        // S_k >= -tol, k = 1..6
  std::array<bool, 5> verdict_casimir{};
  bool consistent = false;
  CasimirValues casimirs;
  std::optional<std::vector<double>> eigenvalues;

  bool psd_by_S() const;
  bool psd_by_casimir() const;
};

/// Full positivity analysis of a 6x6 Hermitian unit-trace matrix. With
/// with_oracle the eigenvalues are attached as well.
PositivityReport positivity_report(const CMatrix& rho, bool with_oracle = false);
PositivityReport positivity_report(const QubitQutritState& state, bool with_oracle = false);

/// Vee route against trace route for c_2..c_6 on a seeded panel of random
/// density matrices (tolerance 1e-9).
CheckReport casimir_routes_check(std::uint64_t seed, std::size_t panel_size);

/// Newton against determinant coefficients on random moment vectors (1e-12).
CheckReport char_poly_routes_check(std::uint64_t seed, std::size_t samples);

struct PositivityOracleOptions {
  std::uint64_t seed = 0;
  std::size_t psd_samples = 1000;
  std::size_t nonpsd_samples = 1000;
  /// Most negative eigenvalue bound for the non-PSD draws.
  double min_negative_eigenvalue = -0.05;
};

/// Items: disagreements of the S verdict with the eigenvalue oracle
/// (min eigenvalue >= -1e-8), disagreements of the Casimir verdict with the S
/// verdict, and the worst |E_k - link(Sbar_k)| (tolerance 1e-8; the counts
/// must be zero).
CheckReport positivity_oracle_check(const PositivityOracleOptions& options);

inline constexpr double kEigenOracleTolerance = 1e-8;

/// Eigenvalues of a Hermitian matrix, ascending.
std::vector<double> hermitian_eigenvalues(const CMatrix& m);

}  // namespace qqinv
