#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qqinv/report.hpp"
#include "qqinv/types.hpp"

namespace qqinv {

enum class BasisLabel { Su2Pauli, Su3GellMann, Su6Tensor };

std::string_view to_string(BasisLabel label);

/// Accepts "su2-pauli", "su3-gellmann", "su6-tensor" and the short forms
/// "su2", "su3", "su6". Anything else is rejected.
BasisLabel parse_basis_label(std::string_view text);

/// Traceless Hermitian basis normalized to tr(t_A t_B) = 2 delta_AB.
struct SuBasis {
  int n = 0;
  BasisLabel label = BasisLabel::Su2Pauli;
  std::vector<CMatrix> elements;

  int dim() const { return static_cast<int>(elements.size()); }
};

SuBasis build_basis(BasisLabel label);

/// Pauli matrices sigma_1..sigma_3 (0-based vector).
const std::vector<CMatrix>& pauli_matrices();
/// Gell-Mann matrices lambda_1..lambda_8 (0-based vector).
const std::vector<CMatrix>& gell_mann_matrices();

/// Symmetric (d) and antisymmetric (f) structure constants of a basis.
///
/// Storage is dense with the last index contiguous, so that d(a, b, :) is a
/// span usable by the SIMD dot kernels. Indices are 0-based here; the JSON
/// export shifts them to 1-based.
class StructureConstants {
 public:
  StructureConstants(int n, int dim, std::vector<double> d, std::vector<double> f);

  int n() const { return n_; }
  int dim() const { return dim_; }

  double d(int a, int b, int c) const { return d_[index(a, b, c)]; }
  double f(int a, int b, int c) const { return f_[index(a, b, c)]; }

  std::span<const double> d_row(int a, int b) const {
    return {d_.data() + index(a, b, 0), static_cast<std::size_t>(dim_)};
  }
  std::span<const double> f_row(int a, int b) const {
    return {f_.data() + index(a, b, 0), static_cast<std::size_t>(dim_)};
  }

 private:
  std::size_t index(int a, int b, int c) const {
    return (static_cast<std::size_t>(a) * dim_ + b) * dim_ + c;
  }

  int n_;
  int dim_;
  std::vector<double> d_;
  std::vector<double> f_;
};

/// d_ABC = 1/4 Tr({t_A,t_B} t_C), f_ABC = -i/4 Tr([t_A,t_B] t_C).
/// Throws RejectedInput if the basis is not orthonormal in the trace form.
StructureConstants structure_constants(const SuBasis& basis);

/// Controls which free-index tuples an identity check visits.
struct IdentityCheckOptions {
  /// Number of random tuples; nullopt means all tuples.
  std::optional<std::size_t> sample;
  std::uint64_t seed = 20100101;
  double tolerance = 1e-9;
};

/// Jacobi, mixed d-f, the ff/dd product rule, the symmetrized ff/dd rule and
/// (for n = 3 only) the cyclic dd identity. Each item's max_violation is the
/// worst absolute residual over the visited (a, b, p, q) tuples.
CheckReport verify_structure_identities(const StructureConstants& sc,
                                        const IdentityCheckOptions& options = {});

/// Residual of t_A t_B = (2/n) delta_AB I + (d_ABC + i f_ABC) t_C over all
/// (A, B) pairs (or a sample of them).
CheckReport verify_closure(const SuBasis& basis, const StructureConstants& sc,
                           const IdentityCheckOptions& options = {});

/// (1/k!) sum over permutations of tr(t_{s(1)} ... t_{s(k)}), 2 <= k <= 6.
double symmetrized_trace(const SuBasis& basis, std::span<const int> indices);

/// The delta/d contraction form of the same quantity, itself symmetrized over
/// index permutations. Used only as a cross-check of symmetrized_trace.
double symmetrized_trace_closed_form(const StructureConstants& sc, std::span<const int> indices);

/// Compares both routes on `tuples_per_arity` random tuples for every arity 2..6.
CheckReport verify_symmetrized_traces(const SuBasis& basis, const StructureConstants& sc,
                                      std::size_t tuples_per_arity, std::uint64_t seed,
                                      double tolerance = 1e-9);

/// Same comparison over every non-decreasing index tuple of arity 2..6.
CheckReport verify_symmetrized_traces_exhaustive(const SuBasis& basis, const StructureConstants& sc,
                                                 double tolerance = 1e-9);

/// Levi-Civita symbol on 0-based indices.
int levi_civita(int i, int j, int k);

}  // namespace qqinv
