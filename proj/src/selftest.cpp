#include "qqinv/selftest.hpp"

#include <algorithm>

#include "qqinv/casimir.hpp"
#include "qqinv/invariants.hpp"
#include "qqinv/molien.hpp"
#include "qqinv/su_algebra.hpp"

namespace qqinv {

namespace {

CheckReport count_report(std::string name, std::vector<Violation> items, std::size_t samples = 0) {
  CheckReport r;
  r.name = std::move(name);
  r.tolerance = 0.0;
  r.samples = samples;
  r.items = std::move(items);
  return r;
}

double mismatches(const std::vector<BigInt>& x, const std::vector<BigInt>& y) {
  if (x.size() != y.size()) return static_cast<double>(std::max(x.size(), y.size()));
  double n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) n += x[i] != y[i];
  return n;
}

}  // namespace

std::vector<CheckReport> run_selftest(const SelftestOptions& options) {
  const std::uint64_t seed = options.seed;
  const std::size_t panel = options.panel_size;
  std::vector<CheckReport> out;

  for (auto label : {BasisLabel::Su2Pauli, BasisLabel::Su3GellMann, BasisLabel::Su6Tensor}) {
    const SuBasis basis = build_basis(label);
    const StructureConstants sc = structure_constants(basis);
    IdentityCheckOptions id;
    id.seed = derive_seed(seed, 1);
    if (label == BasisLabel::Su6Tensor) id.sample = 10000;
    out.push_back(verify_structure_identities(sc, id));
    out.push_back(verify_closure(basis, sc, id));
    if (label == BasisLabel::Su6Tensor)
      out.push_back(verify_symmetrized_traces(basis, sc, 2000, derive_seed(seed, 2)));
    else
      out.push_back(verify_symmetrized_traces_exhaustive(basis, sc));
  }

  out.push_back(casimir_routes_check(derive_seed(seed, 3), panel));
  out.push_back(char_poly_routes_check(derive_seed(seed, 4), 100));
  PositivityOracleOptions po;
  po.seed = derive_seed(seed, 5);
  out.push_back(positivity_oracle_check(po));

  const PanelOptions pan{derive_seed(seed, 6), panel};
  {
    const auto kernel = kernel_at_degree(4, pan.seed, pan.panel_size).words;
    std::vector<TraceWord> expected;
    for (const char* w : {"aaab", "abbb", "aaag", "bbbg", "aabg"}) expected.push_back(TraceWord::parse(w));
    std::sort(expected.begin(), expected.end());
    out.push_back(count_report("degree-4 words and kernel",
                               {{"canonical word count - 18", std::abs(double(enumerate_words(4).size()) - 18.0)},
                                {"kernel differs from the five expected words", kernel == expected ? 0.0 : 1.0}},
                               pan.panel_size));
  }
  out.push_back(sign_relation_check(pan));
  out.push_back(gamma3_formula_check(pan));
  out.push_back(i004_identity_check(pan));
  out.push_back(multidegree_relations_check(pan));
  out.push_back(casimir_decomposition_check(pan));

  {
    MolienOptions mo;
    mo.cap = 20;
    const auto two_qubit = molien_series(adjoint_weight_system(LocalGroup::Su2xSu2), 20, mo);
    const auto qubit_qutrit = molien_series(adjoint_weight_system(LocalGroup::Su2xSu3), 16, mo);
    const auto completed = qubit_qutrit_rational_form();
    out.push_back(count_report(
        "Molien cross-validation",
        {{"su2xsu2 vs rational form, degrees 0..20",
          mismatches(two_qubit, rational_series(two_qubit_rational_form(), 20))},
         {"su2xsu3 vs rational form, degrees 0..16",
          mismatches(qubit_qutrit, rational_series(completed.form, 16))},
         {"su2xsu3 vs reference coefficients", mismatches(qubit_qutrit, qubit_qutrit_poincare_reference())},
         {"palindromy (-, 15) and (+, 35)",
          double(!palindromy_check(two_qubit_rational_form(), -1, 15)) +
              double(!palindromy_check(completed.form, 1, 35))}}));
  }
  return out;
}

}  // namespace qqinv
