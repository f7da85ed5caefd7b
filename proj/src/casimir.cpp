#include "qqinv/casimir.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "qqinv/simd.hpp"

namespace qqinv {

double casimir_normalization(int n, int k) {
  if (k > n) return std::numeric_limits<double>::quiet_NaN();
  double num = 1.0;
  for (int j = 2; j < k; ++j) num *= j;
  double den = 1.0;
  for (int j = 1; j < k; ++j) den *= (n - j);
  return num / den;
}

CasimirValues make_casimir_values(int n, const std::array<double, 5>& raw) {
  CasimirValues c;
  c.n = n;
  c.raw = raw;
  for (int k = 2; k <= 6; ++k) c.normalized[k - 2] = casimir_normalization(n, k) * raw[k - 2];
  return c;
}

RVector vee(const RVector& u, const RVector& v, const StructureConstants& sc) {
  const int dim = sc.dim();
  if (u.size() != dim || v.size() != dim)
    throw RejectedInput("vee: vectors must have " + std::to_string(dim) + " components");
  const double kappa = bloch_kappa(sc.n());
  const std::span<const double> vs(v.data(), static_cast<std::size_t>(dim));
  RVector out(dim);
  for (int a = 0; a < dim; ++a) {
    double acc = 0.0;
    for (int b = 0; b < dim; ++b) {
      if (u(b) != 0.0) acc += u(b) * simd::dot(sc.d_row(a, b), vs);
    }
    out(a) = kappa * acc;
  }
  return out;
}

std::vector<double> moments(const CMatrix& rho, int m) {
  std::vector<double> t;
  t.reserve(m);
  CMatrix power = rho;
  for (int k = 1; k <= m; ++k) {
    if (k > 1) power = (power * rho).eval();
    t.push_back(power.trace().real());
  }
  return t;
}

CasimirValues casimirs_from_traces(const CMatrix& rho) {
  if (rho.rows() != rho.cols() || rho.rows() < 2)
    throw RejectedInput("casimirs_from_traces: expected a square matrix of size >= 2");
  const int n = static_cast<int>(rho.rows());
  const CMatrix omega = static_cast<double>(n) * rho - CMatrix::Identity(n, n);
  const double tr_omega = std::abs(omega.trace());
  if (!(tr_omega <= 1e-9)) {
    std::ostringstream msg;
    msg << "omega = n rho - I is not traceless (|tr| = " << tr_omega << ")";
    throw RejectedInput(msg.str());
  }
  const std::vector<double> w = moments(omega, 6);  // w[k-1] = tr omega^k
  const double c2 = w[1] / n;
  const double c3 = w[2] / n;
  const double c4 = w[3] / n - c2 * c2;
  const double c5 = w[4] / n - 2.0 * c2 * c3;
  const double c6 = w[5] / n - c2 * c2 * c2 - 2.0 * c2 * c4 - c3 * c3;
  return make_casimir_values(n, {c2, c3, c4, c5, c6});
}

CasimirValues casimirs_from_traces(const QubitQutritState& state) {
  return casimirs_from_traces(CMatrix(to_matrix(state)));
}

CasimirValues casimirs_from_vee(const RVector& xi, const StructureConstants& sc) {
  if (xi.size() != sc.dim())
    throw RejectedInput("casimirs_from_vee: Bloch vector must have " + std::to_string(sc.dim()) +
                        " components");
  const double nm1 = sc.n() - 1;
  const RVector xx = vee(xi, xi, sc);
  const RVector xx_xx = vee(xx, xx, sc);
  const RVector xx_x = vee(xx, xi, sc);
  return make_casimir_values(sc.n(), {nm1 * xi.dot(xi), nm1 * xx.dot(xi), nm1 * xx.dot(xx),
                                      nm1 * xx_xx.dot(xi), nm1 * xx_x.squaredNorm()});
}

std::vector<double> char_poly_coeffs(const std::vector<double>& t) {
  if (t.empty()) return {};
  if (!(std::abs(t[0] - 1.0) <= 1e-9))
    throw RejectedInput("char_poly_coeffs: t_1 must equal 1 (unit trace)");
  const std::size_t m = t.size();
  std::vector<double> S(m + 1, 0.0);
  S[0] = 1.0;
  for (std::size_t k = 1; k <= m; ++k) {
    double acc = 0.0;
    for (std::size_t i = 1; i <= k; ++i) {
      const double sign = (i % 2 == 1) ? 1.0 : -1.0;
      acc += sign * S[k - i] * t[i - 1];
    }
    S[k] = acc / static_cast<double>(k);
  }
  return {S.begin() + 1, S.end()};
}

std::vector<double> char_poly_coeffs_determinant(const std::vector<double>& t) {
  if (t.empty()) return {};
  if (!(std::abs(t[0] - 1.0) <= 1e-9))
    throw RejectedInput("char_poly_coeffs: t_1 must equal 1 (unit trace)");
  std::vector<double> S;
  double factorial = 1.0;
  for (std::size_t k = 1; k <= t.size(); ++k) {
    factorial *= static_cast<double>(k);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k, k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j <= i; ++j) m(i, j) = t[i - j];
      if (i + 1 < k) m(i, i + 1) = static_cast<double>(i + 1);
    }
    S.push_back(m.fullPivLu().determinant() / factorial);
  }
  return S;
}

double max_char_coeff(int n, int k) {
  // binom(n, n-k) = binom(n, k)
  double binom = 1.0;
  for (int j = 1; j <= k; ++j) binom = binom * (n - k + j) / j;
  return binom / std::pow(static_cast<double>(n), k);
}

std::array<double, 5> casimir_expressions(const CasimirValues& c) {
  const double C2 = c.normalized_k(2), C3 = c.normalized_k(3), C4 = c.normalized_k(4),
               C5 = c.normalized_k(5), C6 = c.normalized_k(6);
  const double u = 1.0 - 5.0 * C2;
  return {C2,
          3.0 * C2 - C3,
          6.0 * C2 - 5.0 * C2 * C2 - 4.0 * C3 + C4,
          u * u - 30.0 * C2 * C3 + 10.0 * C3 - 5.0 * C4 + C5,
          u * u * u - 180.0 * C2 * C3 + 125.0 * C2 * C4 + 20.0 * C3 * (1.0 + 5.0 * C3) -
              15.0 * C4 + 6.0 * C5 - C6};
}

std::array<AffineLink, 5> fit_expression_map(const std::vector<CMatrix>& samples) {
  std::array<AffineLink, 5> out{};
  const auto m = static_cast<Eigen::Index>(samples.size());
  std::array<Eigen::MatrixXd, 5> design;
  std::array<Eigen::VectorXd, 5> target;
  for (auto& d : design) d.resize(m, 2);
  for (auto& t : target) t.resize(m);
  for (Eigen::Index s = 0; s < m; ++s) {
    const CMatrix& rho = samples[s];
    const auto S = char_poly_coeffs(moments(rho, 6));
    const auto E = casimir_expressions(casimirs_from_traces(rho));
    for (int k = 2; k <= 6; ++k) {
      design[k - 2](s, 0) = 1.0;
      design[k - 2](s, 1) = S[k - 1] / max_char_coeff(6, k);
      target[k - 2](s) = E[k - 2];
    }
  }
  for (int i = 0; i < 5; ++i) {
    const Eigen::Vector2d coef = design[i].colPivHouseholderQr().solve(target[i]);
    out[i] = {coef(0), coef(1)};
  }
  return out;
}

bool PositivityReport::psd_by_S() const {
  for (bool v : verdict_S)
    if (!v) return false;
  return true;
}

bool PositivityReport::psd_by_casimir() const {
  for (bool v : verdict_casimir)
    if (!v) return false;
  return true;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

PositivityReport positivity_report(const CMatrix& rho, bool with_oracle) {
  if (rho.rows() != 6 || rho.cols() != 6)
    throw RejectedInput("positivity_report expects a 6x6 matrix");
  const double herm = hermiticity_deviation(rho);
  if (!(herm <= 1e-9)) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian (max |rho - rho^dag| = " << herm << ")";
    throw RejectedInput(msg.str());
  }
  constexpr int n = 6;
  PositivityReport r;
  r.t = moments(rho, n);
  r.S = char_poly_coeffs(r.t);
  for (int k = 2; k <= n; ++k) r.S_bar.push_back(r.S[k - 1] / max_char_coeff(n, k));
  r.casimirs = casimirs_from_traces(rho);
  r.casimir_exprs = casimir_expressions(r.casimirs);

  for (double s : r.S) r.verdict_S.push_back(s >= -kPositivityTolerance);
  for (int k = 2; k <= n; ++k) {
    // The S_k tolerance carried through E_k = offset + slope S_k / max S_k.
    const double tol = kPositivityTolerance / max_char_coeff(n, k);
    const double e = r.casimir_exprs[k - 2];
    r.verdict_casimir[k - 2] = e >= -tol && e <= 1.0 + tol;
  }
  r.consistent = r.psd_by_S() == r.psd_by_casimir();
  if (with_oracle) r.eigenvalues = hermitian_eigenvalues(rho);
  return r;
}

PositivityReport positivity_report(const QubitQutritState& state, bool with_oracle) {
  return positivity_report(CMatrix(to_matrix(state)), with_oracle);
}

CheckReport casimir_routes_check(std::uint64_t seed, std::size_t panel_size) {
  const SuBasis basis = build_basis(BasisLabel::Su6Tensor);
  const StructureConstants sc = structure_constants(basis);
  CheckReport r;
  r.name = "Casimir vee route vs trace route";
  r.seed = seed;
  r.samples = panel_size;
  std::array<double, 5> worst{};
  for (const auto& st : make_panel(seed, panel_size)) {
    const auto trace = casimirs_from_traces(st);
    const auto via_vee = casimirs_from_vee(to_bloch(st).xi, sc);
    for (int k = 0; k < 5; ++k) worst[k] = std::max(worst[k], std::abs(trace.raw[k] - via_vee.raw[k]));
  }
  for (int k = 0; k < 5; ++k) r.items.push_back({"c" + std::to_string(k + 2), worst[k]});
  return r;
}

CheckReport char_poly_routes_check(std::uint64_t seed, std::size_t samples) {
  CheckReport r;
  r.name = "characteristic coefficients Newton vs determinant";
  r.seed = seed;
  r.samples = samples;
  r.tolerance = 1e-12;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<double> t{1.0};
    for (int k = 2; k <= 6; ++k) t.push_back(u(rng));
    const auto a = char_poly_coeffs(t);
    const auto b = char_poly_coeffs_determinant(t);
    for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  }
  r.items.push_back({"|S_newton - S_det|", worst});
  return r;
}

CheckReport positivity_oracle_check(const PositivityOracleOptions& options) {
  CheckReport r;
  r.name = "positivity verdicts vs eigenvalue oracle";
  r.seed = options.seed;
  r.samples = options.psd_samples + options.nonpsd_samples;
  r.tolerance = 1e-8;
  double s_vs_eigen = 0, casimir_vs_s = 0, link = 0;
  auto visit = [&](const QubitQutritState& st) {
    const auto rep = positivity_report(st, true);
    const bool psd_oracle = rep.eigenvalues->front() >= -kEigenOracleTolerance;
    if (rep.psd_by_S() != psd_oracle) ++s_vs_eigen;
    if (!rep.consistent) ++casimir_vs_s;
    for (int k = 0; k < 5; ++k) {
      const double predicted = kExpressionLink[k].offset + kExpressionLink[k].slope * rep.S_bar[k];
      link = std::max(link, std::abs(rep.casimir_exprs[k] - predicted));
    }
  };
  for (std::size_t i = 0; i < options.psd_samples; ++i)
    visit(random_density(derive_seed(options.seed, 2 * i)));
  for (std::size_t i = 0; i < options.nonpsd_samples; ++i)
    visit(random_nonpsd_unit_trace(derive_seed(options.seed, 2 * i + 1), options.min_negative_eigenvalue));
  r.items.push_back({"S verdict disagreements with eigenvalues", s_vs_eigen});
  r.items.push_back({"Casimir verdict disagreements with S verdict", casimir_vs_s});
  r.items.push_back({"|E_k - link(Sbar_k)|", link});
  return r;
}

}  // namespace qqinv
