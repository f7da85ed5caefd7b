#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qqinv {

using BigInt = boost::multiprecision::cpp_int;
using Exponent = std::vector<int>;

enum class LocalGroup { Su2xSu2, Su2xSu3 };

/// Accepts "2x2", "2x3", "su2xsu2", "su2xsu3".
LocalGroup parse_local_group(std::string_view text);
std::string_view to_string(LocalGroup g);

/// Torus data of a representation of a compact group.
///
/// `weights` lists the exponent vectors of the full diagonal form of pi(g)
/// (for the local groups: the tensor product of the two u(n) adjoint tori,
/// trace part included). The first `split_trivial` zero weights are the
/// factored-out (1 - q) prefactor of det(I - q pi(g)); the Molien integrand
/// uses representation_weights().
struct WeightSystem {
  int rank = 0;
  std::vector<Exponent> weights;
  std::vector<Exponent> roots;
  int weyl_order = 1;
  int split_trivial = 0;

  std::vector<Exponent> representation_weights() const;
  std::vector<Exponent> positive_roots() const;
  int max_abs_weight_coordinate() const;
};

WeightSystem adjoint_weight_system(LocalGroup group);

/// Trivial group acting on a `dim`-dimensional space (all weights zero,
/// no roots, |W| = 1). Its Molien series counts monomials.
WeightSystem trivial_weight_system(int dim);

/// Throws RejectedInput if a WeightSystem invariant is violated.
void validate(const WeightSystem& ws);

/// Deterministic primes just below 2^62, descending.
std::vector<std::int64_t> series_primes(std::size_t count);

/// Power series in q truncated at degree N whose coefficients are Laurent
/// polynomials in the torus variables with exact integer coefficients.
///
/// Each coefficient is kept as residues modulo word-size primes in a dense
/// exponent box of radius N * max|weight coordinate|; integers are recovered
/// by Chinese remaindering into the symmetric range. The caller chooses
/// enough primes to cover the magnitudes it will read back.
class TruncatedTorusSeries {
 public:
  /// The series 1 (constant Laurent polynomial) in `rank` variables.
  TruncatedTorusSeries(int rank, int max_q_degree, int radius, std::vector<std::int64_t> primes);

  /// Multiplies by 1 / (1 - q x^w). Uses the SIMD add-mod kernel.
  void multiply_geometric(const Exponent& w);

  int rank() const { return rank_; }
  int max_q_degree() const { return max_degree_; }
  int radius() const { return radius_; }
  const std::vector<std::int64_t>& primes() const { return primes_; }

  /// Residue of the coefficient of q^d x^e modulo primes()[p]; zero outside
  /// the box.
  std::int64_t residue(std::size_t p, int d, const Exponent& e) const;

  /// Exact coefficient of q^d x^e.
  BigInt coefficient(int d, const Exponent& e) const;

  /// All nonzero Laurent terms of the q^d coefficient.
  std::vector<std::pair<Exponent, BigInt>> laurent_terms(int d) const;

 private:
  std::size_t flat(const Exponent& e) const;
  bool in_box(const Exponent& e) const;

  int rank_;
  int max_degree_;
  int radius_;
  std::size_t box_;
  std::vector<std::size_t> stride_;
  std::vector<std::int64_t> primes_;
  // data_[p][d * box_ + flat(e)]
  std::vector<std::vector<std::int64_t>> data_;
};

/// Chinese remaindering of residues into the symmetric range (-M/2, M/2].
BigInt crt_symmetric(const std::vector<std::int64_t>& residues,
                     const std::vector<std::int64_t>& primes);

enum class MolienBackend {
  Weyl,     // (1/|W|) CT[ prod over all roots (1 - x^a) * F ]
  Reduced,  // CT[ prod over positive roots (1 - x^-a) * F ]
};

MolienBackend parse_molien_backend(std::string_view text);

struct MolienOptions {
  int cap = 20;
  MolienBackend backend = MolienBackend::Weyl;
  unsigned threads = 1;
  /// Lower bound on the number of CRT primes (the magnitude bound may demand more).
  std::size_t min_primes = 1;
};

/// Coefficients c_0..c_N of the Molien series by exact constant-term
/// extraction over the maximal torus. Throws RejectedInput if N < 0 or
/// N > options.cap.
std::vector<BigInt> molien_series(const WeightSystem& ws, int N, const MolienOptions& options = {});

/// Numerator / prod (1 - q^degree)^multiplicity.
struct RationalForm {
  std::vector<BigInt> numerator;
  std::vector<std::pair<int, int>> denominator;  // (degree, multiplicity)
};

/// Taylor coefficients 0..N of the rational form. Denominator degrees must be >= 1.
std::vector<BigInt> rational_series(const RationalForm& form, int N);

/// True iff M(1/q) = sign * q^top_degree * M(q) holds identically for the
/// rational form. Trailing zeros of the numerator are ignored.
bool palindromy_check(const RationalForm& form, int sign, int top_degree);

/// Two-qubit Molien function in rational form.
RationalForm two_qubit_rational_form();

/// Qubit-qutrit rational form with the numerator completed to degree 75.
struct CompletedForm {
  RationalForm form;
  /// Reference coefficients that disagree with the palindromic completion.
  std::vector<std::string> inconsistencies;
};
CompletedForm qubit_qutrit_rational_form();

/// The seventeen reference Poincare coefficients c_0..c_16 for SU(2) x SU(3).
std::vector<BigInt> qubit_qutrit_poincare_reference();

}  // namespace qqinv
