#include "qqinv/cli.hpp"

#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "qqinv/casimir.hpp"
#include "qqinv/invariants.hpp"
#include "qqinv/io.hpp"
#include "qqinv/molien.hpp"
#include "qqinv/selftest.hpp"
#include "qqinv/su_algebra.hpp"

namespace qqinv::cli {

namespace {

enum class Format { Json, Table };

struct Settings {
  std::string format = "json";
  bool format_given = false;

  std::string algebra = "su6";

  std::string state_path;
  bool oracle = false;

  int max_degree = 4;
  bool checks = false;

  std::string group;
  int degree = -1;
  bool compare_rational = false;
  std::string backend = "weyl";
  int cap = 20;
  unsigned threads = 1;

  std::uint64_t seed = kSelftestSeed;
  std::size_t panel_size = 200;
};

void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

std::string fixed(double v, int precision = 12) {
  std::ostringstream s;
  s << std::setprecision(precision) << v;
  return s.str();
}

// Pads by code points so Greek letters and superscripts line up.
std::string pad_display(const std::string& text, std::size_t width) {
  std::size_t points = 0;
  for (unsigned char c : text) points += (c & 0xC0) != 0x80;
  return text + std::string(points < width ? width - points : 1, ' ');
}

int cmd_basis(const Settings& s, Format fmt, std::ostream& out) {
  const SuBasis basis = build_basis(parse_basis_label(s.algebra));
  const StructureConstants sc = structure_constants(basis);
  const Json j = basis_to_json(basis, sc);
  if (fmt == Format::Json) {
    print_json(out, j);
    return kSuccess;
  }
  out << "label " << j["label"].get<std::string>() << "  n " << basis.n << "  dim " << basis.dim() << '\n';
  for (const char* kind : {"d", "f"})
    for (const auto& e : j[kind])
      out << kind << std::setw(4) << e[0].get<int>() << std::setw(4) << e[1].get<int>() << std::setw(4)
          << e[2].get<int>() << "  " << std::setw(22) << fixed(e[3].get<double>(), 16) << '\n';
  return kSuccess;
}

int cmd_positivity(const Settings& s, Format fmt, std::ostream& out) {
  const QubitQutritState state = load_state(s.state_path);
  const PositivityReport r = positivity_report(state, s.oracle);
  if (fmt == Format::Json) {
    print_json(out, to_json(r));
  } else {
    out << std::left << std::setw(4) << "k" << std::setw(22) << "t_k" << std::setw(22) << "S_k" << std::setw(8)
        << "S>=0" << std::setw(22) << "E_k" << "E in [0,1]" << '\n';
    for (int k = 1; k <= 6; ++k) {
      out << std::setw(4) << k << std::setw(22) << fixed(r.t[k - 1]) << std::setw(22) << fixed(r.S[k - 1])
          << std::setw(8) << (r.verdict_S[k - 1] ? "pass" : "FAIL");
      if (k >= 2)
        out << std::setw(22) << fixed(r.casimir_exprs[k - 2]) << (r.verdict_casimir[k - 2] ? "pass" : "FAIL");
      out << '\n';
    }
    out << "psd_by_S " << (r.psd_by_S() ? "yes" : "no") << "  psd_by_casimir "
        << (r.psd_by_casimir() ? "yes" : "no") << "  consistent " << (r.consistent ? "yes" : "no") << '\n';
    if (r.eigenvalues) {
      out << "eigenvalues";
      for (double e : *r.eigenvalues) out << ' ' << fixed(e);
      out << '\n';
    }
  }
  return r.consistent ? kSuccess : kCheckFailed;
}

std::vector<CheckReport> invariant_checks() {
  return {sign_relation_check(), gamma3_formula_check(), i004_identity_check(), multidegree_relations_check(),
          casimir_decomposition_check()};
}

int cmd_invariants(const Settings& s, Format fmt, std::ostream& out) {
  if (s.max_degree < 1 || s.max_degree > 8)
    throw RejectedInput("--max-degree must lie in 1..8, got " + std::to_string(s.max_degree));
  const QubitQutritState state = load_state(s.state_path);
  const SectorMatrices sectors = sector_matrices(state);
  Json words = Json::array();
  for (int d = 1; d <= s.max_degree; ++d) {
    for (const auto& w : enumerate_words(d)) {
      const TraceValue v = eval_trace(w, sectors);
      Json e{{"word", w.letters()}, {"display", w.display()}, {"multidegree", w.multidegree()}, {"value", v.value}};
      if (v.flagged) e["imag"] = v.imag;
      e["flagged"] = v.flagged;
      words.push_back(std::move(e));
    }
  }
  bool ok = true;
  Json checks = Json::array();
  std::vector<CheckReport> reports;
  if (s.checks) {
    reports = invariant_checks();
    for (const auto& r : reports) {
      ok = ok && r.passed();
      checks.push_back(to_json(r));
    }
  }
  if (fmt == Format::Json) {
    Json j{{"max_degree", s.max_degree}, {"words", words}};
    if (s.checks) j["checks"] = checks;
    print_json(out, j);
  } else {
    out << std::left << std::setw(10) << "word" << std::setw(12) << "display" << std::setw(10) << "(s,t,q)"
        << "value" << '\n';
    for (const auto& e : words) {
      const auto m = e["multidegree"];
      std::ostringstream md;
      md << '(' << m[0].get<int>() << ',' << m[1].get<int>() << ',' << m[2].get<int>() << ')';
      out << std::setw(10) << e["word"].get<std::string>() << pad_display(e["display"].get<std::string>(), 12)
          << std::setw(10) << md.str() << fixed(e["value"].get<double>())
          << (e["flagged"].get<bool>() ? "  (imaginary part)" : "") << '\n';
    }
    for (const auto& r : reports)
      out << (r.passed() ? "PASS " : "FAIL ") << r.name << "  worst " << fixed(r.worst(), 3) << '\n';
  }
  return ok ? kSuccess : kCheckFailed;
}

int cmd_molien(const Settings& s, Format fmt, std::ostream& out, std::ostream& err) {
  if (s.degree < 0) throw RejectedInput("--degree must be non-negative");
  const LocalGroup group = parse_local_group(s.group);
  MolienOptions opt;
  opt.cap = s.cap;
  opt.backend = parse_molien_backend(s.backend);
  opt.threads = std::max(1u, s.threads);
  const auto series = molien_series(adjoint_weight_system(group), s.degree, opt);

  bool agrees = true;
  int first_mismatch = -1;
  if (s.compare_rational) {
    const RationalForm form =
        group == LocalGroup::Su2xSu2 ? two_qubit_rational_form() : qubit_qutrit_rational_form().form;
    const auto expected = rational_series(form, s.degree);
    for (int d = 0; d <= s.degree; ++d)
      if (series[d] != expected[d]) {
        agrees = false;
        first_mismatch = d;
        break;
      }
  }

  // Plain "d c_d" lines unless JSON is requested explicitly.
  if (fmt == Format::Json && s.format_given) {
    Json coeffs = Json::array();
    for (const auto& c : series) coeffs.push_back(c.str());
    Json j{{"group", std::string(to_string(group))},
           {"backend", s.backend},
           {"degree", s.degree},
           {"coefficients", coeffs}};
    if (s.compare_rational) j["rational_form_agrees"] = agrees;
    print_json(out, j);
  } else {
    for (int d = 0; d <= s.degree; ++d) out << d << ' ' << series[d] << '\n';
  }
  if (s.compare_rational) {
    if (agrees)
      err << "rational form agrees through degree " << s.degree << '\n';
    else
      err << "rational form disagrees at degree " << first_mismatch << '\n';
  }
  return agrees ? kSuccess : kCheckFailed;
}

int cmd_selftest(const Settings& s, Format fmt, std::ostream& out) {
  if (s.panel_size < 1) throw RejectedInput("--panel-size must be >= 1");
  const auto reports = run_selftest({s.seed, s.panel_size});
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.passed();
  if (fmt == Format::Json && s.format_given) {
    Json checks = Json::array();
    for (const auto& r : reports) checks.push_back(to_json(r));
    print_json(out, Json{{"seed", s.seed}, {"panel_size", s.panel_size}, {"passed", ok}, {"checks", checks}});
  } else {
    out << "selftest seed " << s.seed << "  panel-size " << s.panel_size << '\n';
    for (const auto& r : reports) {
      out << (r.passed() ? "PASS  " : "FAIL  ") << std::left << std::setw(52) << r.name << " worst "
          << std::setw(12) << fixed(r.worst(), 3) << " tol " << fixed(r.tolerance, 3) << '\n';
      if (!r.passed())
        for (const auto& v : r.items)
          if (!(v.max_violation <= r.tolerance)) out << "      " << v.relation << ": " << v.max_violation << '\n';
    }
    out << (ok ? "all checks passed" : "some checks FAILED") << '\n';
  }
  return ok ? kSuccess : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Local-unitary and positivity invariants of qubit-qutrit states", "qqinv"};
  app.require_subcommand(1);
  auto* fmt_opt = app.add_option("--format", s.format, "Output format")
                      ->check(CLI::IsMember({"json", "table"}))
                      ->default_str("json");

  auto* basis = app.add_subcommand("basis", "Dump a basis and its structure constants");
  basis->add_option("--algebra", s.algebra, "su2, su3 or su6")->check(CLI::IsMember({"su2", "su3", "su6"}));

  auto* positivity = app.add_subcommand("positivity", "Positivity report of a state file");
  positivity->add_option("file", s.state_path, "State JSON")->required();
  positivity->add_flag("--oracle", s.oracle, "Attach eigenvalues");

  auto* invariants = app.add_subcommand("invariants", "Trace-word invariants of a state file");
  invariants->add_option("file", s.state_path, "State JSON")->required();
  invariants->add_option("--max-degree", s.max_degree, "Largest word length (1..8)");
  invariants->add_flag("--checks", s.checks, "Append the identity checks");

  auto* molien = app.add_subcommand("molien", "Molien series coefficients");
  molien->add_option("--group", s.group, "2x2 or 2x3")->required()->check(CLI::IsMember({"2x2", "2x3"}));
  molien->add_option("--degree", s.degree, "Highest degree")->required();
  molien->add_flag("--compare-rational", s.compare_rational, "Compare with the rational form");
  molien->add_option("--backend", s.backend, "weyl or reduced")->check(CLI::IsMember({"weyl", "reduced"}));
  molien->add_option("--cap", s.cap, "Refuse degrees above this bound");
  molien->add_option("--threads", s.threads, "Worker threads across CRT primes");

  auto* selftest = app.add_subcommand("selftest", "Run every identity and oracle check");
  selftest->add_option("--seed", s.seed, "Base seed");
  selftest->add_option("--panel-size", s.panel_size, "States per panel");

  for (auto* sub : {basis, positivity, invariants, molien, selftest}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  s.format_given = fmt_opt->count() > 0;
  const Format fmt = s.format == "table" ? Format::Table : Format::Json;

  try {
    if (*basis) return cmd_basis(s, fmt, out);
    if (*positivity) return cmd_positivity(s, fmt, out);
    if (*invariants) return cmd_invariants(s, fmt, out);
    if (*molien) return cmd_molien(s, fmt, out, err);
    if (*selftest) return cmd_selftest(s, fmt, out);
  } catch (const RejectedInput& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kInputError;
}

}  // namespace qqinv::cli
