#include "qqinv/su_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "qqinv/simd.hpp"

namespace qqinv {

namespace {

constexpr Complex I_{0.0, 1.0};

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Re tr(A B) without forming the product.
Complex trace_of_product(const CMatrix& a, const CMatrix& b) {
  return a.cwiseProduct(b.transpose()).sum();
}

double kronecker(int i, int j) { return i == j ? 1.0 : 0.0; }

// sum_c X(i, j, c) Y(k, l, c)
double contract(std::span<const double> x, std::span<const double> y) {
  return simd::dot(x, y);
}

template <typename Visit>
void for_each_tuple(int dim, const IdentityCheckOptions& options, Visit&& visit, std::size_t& count) {
  if (options.sample) {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<int> pick(0, dim - 1);
    for (std::size_t s = 0; s < *options.sample; ++s) {
      const int a = pick(rng), b = pick(rng), p = pick(rng), q = pick(rng);
      visit(a, b, p, q);
    }
    count = *options.sample;
    return;
  }
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (int p = 0; p < dim; ++p)
        for (int q = 0; q < dim; ++q) visit(a, b, p, q);
  count = static_cast<std::size_t>(dim) * dim * dim * dim;
}

}  // namespace

std::string_view to_string(BasisLabel label) {
  switch (label) {
    case BasisLabel::Su2Pauli: return "su2-pauli";
    case BasisLabel::Su3GellMann: return "su3-gellmann";
    case BasisLabel::Su6Tensor: return "su6-tensor";
  }
  return "unknown";
}

BasisLabel parse_basis_label(std::string_view text) {
  if (text == "su2-pauli" || text == "su2") return BasisLabel::Su2Pauli;
  if (text == "su3-gellmann" || text == "su3") return BasisLabel::Su3GellMann;
  if (text == "su6-tensor" || text == "su6") return BasisLabel::Su6Tensor;
  throw RejectedInput("unknown basis label '" + std::string(text) +
                      "' (expected su2-pauli, su3-gellmann or su6-tensor)");
}

const std::vector<CMatrix>& pauli_matrices() {
  static const std::vector<CMatrix> sigma = [] {
    std::vector<CMatrix> s(3, CMatrix::Zero(2, 2));
    s[0] << 0, 1, 1, 0;
    s[1] << 0, -I_, I_, 0;
    s[2] << 1, 0, 0, -1;
    return s;
  }();
  return sigma;
}

const std::vector<CMatrix>& gell_mann_matrices() {
  static const std::vector<CMatrix> lambda = [] {
    std::vector<CMatrix> l(8, CMatrix::Zero(3, 3));
    l[0](0, 1) = l[0](1, 0) = 1;
    l[1](0, 1) = -I_;
    l[1](1, 0) = I_;
    l[2](0, 0) = 1;
    l[2](1, 1) = -1;
    l[3](0, 2) = l[3](2, 0) = 1;
    l[4](0, 2) = -I_;
    l[4](2, 0) = I_;
    l[5](1, 2) = l[5](2, 1) = 1;
    l[6](1, 2) = -I_;
    l[6](2, 1) = I_;
    const double s = 1.0 / std::sqrt(3.0);
    l[7](0, 0) = s;
    l[7](1, 1) = s;
    l[7](2, 2) = -2.0 * s;
    return l;
  }();
  return lambda;
}

SuBasis build_basis(BasisLabel label) {
  SuBasis basis;
  basis.label = label;
  switch (label) {
    case BasisLabel::Su2Pauli:
      basis.n = 2;
      basis.elements = pauli_matrices();
      break;
    case BasisLabel::Su3GellMann:
      basis.n = 3;
      basis.elements = gell_mann_matrices();
      break;
    case BasisLabel::Su6Tensor: {
      basis.n = 6;
      const auto& sigma = pauli_matrices();
      const auto& lambda = gell_mann_matrices();
      const CMatrix id2 = CMatrix::Identity(2, 2);
      const CMatrix id3 = CMatrix::Identity(3, 3);
      const double r3 = 1.0 / std::sqrt(3.0);
      const double r2 = 1.0 / std::sqrt(2.0);
      basis.elements.reserve(35);
      for (int i = 0; i < 3; ++i) basis.elements.push_back(r3 * kron(sigma[i], id3));
      for (int a = 0; a < 8; ++a) basis.elements.push_back(r2 * kron(id2, lambda[a]));
      for (int i = 0; i < 3; ++i)
        for (int a = 0; a < 8; ++a) basis.elements.push_back(r2 * kron(sigma[i], lambda[a]));
      break;
    }
  }
  return basis;
}

StructureConstants::StructureConstants(int n, int dim, std::vector<double> d, std::vector<double> f)
    : n_(n), dim_(dim), d_(std::move(d)), f_(std::move(f)) {
  const auto expected = static_cast<std::size_t>(dim) * dim * dim;
  if (d_.size() != expected || f_.size() != expected)
    throw RejectedInput("structure-constant tensors must have dim^3 entries");
}

StructureConstants structure_constants(const SuBasis& basis) {
  const int dim = basis.dim();
  if (dim != basis.n * basis.n - 1)
    throw RejectedInput("basis must have n^2-1 elements");
  for (int a = 0; a < dim; ++a) {
    for (int b = a; b < dim; ++b) {
      const Complex g = trace_of_product(basis.elements[a], basis.elements[b]);
      const double expected = a == b ? 2.0 : 0.0;
      if (std::abs(g - expected) > 1e-9)
        throw RejectedInput("basis is not orthonormal: tr(t_" + std::to_string(a + 1) + " t_" +
                            std::to_string(b + 1) + ") deviates from 2*delta by " +
                            std::to_string(std::abs(g - expected)));
    }
  }

  const auto total = static_cast<std::size_t>(dim) * dim * dim;
  std::vector<double> d(total), f(total);
  double residue = 0.0;
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      const CMatrix ab = basis.elements[a] * basis.elements[b];
      const CMatrix ba = basis.elements[b] * basis.elements[a];
      const CMatrix anti = ab + ba;
      const CMatrix comm = ab - ba;
      for (int c = 0; c < dim; ++c) {
        const Complex dv = 0.25 * trace_of_product(anti, basis.elements[c]);
        const Complex fv = -0.25 * I_ * trace_of_product(comm, basis.elements[c]);
        residue = std::max({residue, std::abs(dv.imag()), std::abs(fv.imag())});
        const auto idx = (static_cast<std::size_t>(a) * dim + b) * dim + c;
        d[idx] = dv.real();
        f[idx] = fv.real();
      }
    }
  }
  if (residue > 1e-10)
    throw RejectedInput("structure constants carry an imaginary residue of " +
                        std::to_string(residue) + "; basis is not Hermitian");
  return StructureConstants(basis.n, dim, std::move(d), std::move(f));
}

CheckReport verify_structure_identities(const StructureConstants& sc,
                                        const IdentityCheckOptions& options) {
  const int dim = sc.dim();
  const double two_over_n = 2.0 / sc.n();
  auto dd = [&](int i, int j, int k, int l) { return contract(sc.d_row(i, j), sc.d_row(k, l)); };
  auto ff = [&](int i, int j, int k, int l) { return contract(sc.f_row(i, j), sc.f_row(k, l)); };
  auto df = [&](int i, int j, int k, int l) { return contract(sc.d_row(i, j), sc.f_row(k, l)); };

  double jacobi = 0, mixed = 0, product = 0, symmetric = 0, cyclic_dd = 0;
  const bool su3 = sc.n() == 3;

  std::size_t count = 0;
  for_each_tuple(
      dim, options,
      [&](int a, int b, int p, int q) {
        const double dap_bq = kronecker(a, p) * kronecker(b, q);
        const double daq_bp = kronecker(a, q) * kronecker(b, p);
        const double dab_pq = kronecker(a, b) * kronecker(p, q);

        // f_abc f_cpq + f_bpc f_caq + f_pac f_cbq = 0
        const double r1 = ff(a, b, p, q) + ff(b, p, a, q) + ff(p, a, b, q);
        // d_abc f_cpq + d_bpc f_caq + d_pac f_cbq = 0
        const double r2 = df(a, b, p, q) + df(b, p, a, q) + df(p, a, b, q);
        // f_abc f_cpq = d_apc d_cbq - d_aqc d_cbp + 2/n (d_ap d_bq - d_aq d_bp)
        const double r3 =
            ff(a, b, p, q) - (dd(a, p, b, q) - dd(a, q, b, p) + two_over_n * (dap_bq - daq_bp));
        // f_abc f_cpq + f_aqc f_cpb = 2 d_apc d_cbq - d_abc d_cpq - d_aqc d_cbp
        //                            + 2/n (2 d_ap d_bq - d_ab d_pq - d_aq d_bp)
        const double r4 = ff(a, b, p, q) + ff(a, q, p, b) -
                          (2.0 * dd(a, p, b, q) - dd(a, b, p, q) - dd(a, q, b, p) +
                           two_over_n * (2.0 * dap_bq - dab_pq - daq_bp));
        jacobi = std::max(jacobi, std::abs(r1));
        mixed = std::max(mixed, std::abs(r2));
        product = std::max(product, std::abs(r3));
        symmetric = std::max(symmetric, std::abs(r4));
        if (su3) {
          // d_abc d_cpq + d_bpc d_caq + d_pac d_cbq = 1/3 (d_ab d_pq + d_ap d_bq + d_aq d_bp)
          const double r5 = dd(a, b, p, q) + dd(b, p, a, q) + dd(p, a, b, q) -
                            (dab_pq + dap_bq + daq_bp) / 3.0;
          cyclic_dd = std::max(cyclic_dd, std::abs(r5));
        }
      },
      count);

  CheckReport report;
  report.name = "structure identities su(" + std::to_string(sc.n()) + ")";
  report.tolerance = options.tolerance;
  report.seed = options.sample ? options.seed : 0;
  report.samples = count;
  report.items = {{"ff + ff + ff = 0", jacobi},
                  {"df + df + df = 0", mixed},
                  {"ff = dd - dd + 2/n(dd - dd)", product},
                  {"ff + ff = 2dd - dd - dd + 2/n(...)", symmetric}};
  if (su3) report.items.push_back({"dd + dd + dd = 1/3(...)", cyclic_dd});
  return report;
}

CheckReport verify_closure(const SuBasis& basis, const StructureConstants& sc,
                           const IdentityCheckOptions& options) {
  const int dim = basis.dim();
  const int n = basis.n;
  const CMatrix id = CMatrix::Identity(n, n);
  double worst = 0.0;
  auto visit = [&](int a, int b) {
    CMatrix r = basis.elements[a] * basis.elements[b];
    if (a == b) r -= (2.0 / n) * id;
    for (int c = 0; c < dim; ++c) r -= Complex(sc.d(a, b, c), sc.f(a, b, c)) * basis.elements[c];
    worst = std::max(worst, r.cwiseAbs().maxCoeff());
  };
  std::size_t count = 0;
  if (options.sample) {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<int> pick(0, dim - 1);
    for (std::size_t s = 0; s < *options.sample; ++s) {
      const int a = pick(rng);
      visit(a, pick(rng));
    }
    count = *options.sample;
  } else {
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) visit(a, b);
    count = static_cast<std::size_t>(dim) * dim;
  }
  CheckReport report;
  report.name = "closure su(" + std::to_string(n) + ")";
  report.tolerance = options.tolerance;
  report.seed = options.sample ? options.seed : 0;
  report.samples = count;
  report.items = {{"t_A t_B = 2/n delta I + (d + i f) t_C", worst}};
  return report;
}

double symmetrized_trace(const SuBasis& basis, std::span<const int> indices) {
  const auto k = indices.size();
  if (k < 2 || k > 6) throw RejectedInput("symmetrized_trace supports 2..6 indices");
  for (int i : indices)
    if (i < 0 || i >= basis.dim())
      throw RejectedInput("basis index " + std::to_string(i) + " out of range");

  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  Complex sum = 0.0;
  std::size_t perms = 0;
  do {
    CMatrix prod = basis.elements[indices[order[0]]];
    for (std::size_t j = 1; j < k; ++j) prod = prod * basis.elements[indices[order[j]]];
    sum += prod.trace();
    ++perms;
  } while (std::next_permutation(order.begin(), order.end()));
  return sum.real() / static_cast<double>(perms);
}

namespace {

// Unsymmetrized closed form evaluated on one ordering of the indices.
double closed_form_ordered(const StructureConstants& sc, std::span<const int> t) {
  const double n = sc.n();
  const int dim = sc.dim();
  auto delta = [](int i, int j) { return kronecker(i, j); };
  switch (t.size()) {
    case 2:
      return 2.0 * delta(t[0], t[1]);
    case 3:
      return 2.0 * sc.d(t[0], t[1], t[2]);
    case 4:
      return 4.0 / n * delta(t[0], t[1]) * delta(t[2], t[3]) +
             2.0 * simd::dot(sc.d_row(t[0], t[1]), sc.d_row(t[2], t[3]));
    case 5: {
      // chain d_abf d_fcg d_gde
      std::vector<double> w(dim);
      const auto u = sc.d_row(t[0], t[1]);
      for (int g = 0; g < dim; ++g) w[g] = simd::dot(u, sc.d_row(t[2], g));
      const double chain = simd::dot(w, sc.d_row(t[3], t[4]));
      return 4.0 / n *
                 (sc.d(t[0], t[1], t[2]) * delta(t[3], t[4]) +
                  delta(t[0], t[1]) * sc.d(t[2], t[3], t[4])) +
             2.0 * chain;
    }
    case 6: {
      std::vector<double> w(dim), x(dim);
      const auto u = sc.d_row(t[0], t[1]);
      for (int h = 0; h < dim; ++h) w[h] = simd::dot(u, sc.d_row(t[2], h));
      for (int v = 0; v < dim; ++v) x[v] = simd::dot(w, sc.d_row(t[3], v));
      const double chain = simd::dot(x, sc.d_row(t[4], t[5]));
      return 8.0 / (n * n) * delta(t[0], t[1]) * delta(t[2], t[3]) * delta(t[4], t[5]) +
             4.0 / n *
                 (simd::dot(sc.d_row(t[0], t[1]), sc.d_row(t[2], t[3])) * delta(t[4], t[5]) +
                  delta(t[0], t[1]) * simd::dot(sc.d_row(t[2], t[3]), sc.d_row(t[4], t[5]))) +
             4.0 / n * sc.d(t[0], t[1], t[2]) * sc.d(t[3], t[4], t[5]) + 2.0 * chain;
    }
    default:
      throw RejectedInput("closed form supports 2..6 indices");
  }
}

}  // namespace

double symmetrized_trace_closed_form(const StructureConstants& sc, std::span<const int> indices) {
  const auto k = indices.size();
  if (k < 2 || k > 6) throw RejectedInput("symmetrized_trace supports 2..6 indices");
  for (int i : indices)
    if (i < 0 || i >= sc.dim())
      throw RejectedInput("basis index " + std::to_string(i) + " out of range");
  std::vector<int> order(k), permuted(k);
  std::iota(order.begin(), order.end(), 0);
  double sum = 0.0;
  std::size_t perms = 0;
  do {
    for (std::size_t j = 0; j < k; ++j) permuted[j] = indices[order[j]];
    sum += closed_form_ordered(sc, permuted);
    ++perms;
  } while (std::next_permutation(order.begin(), order.end()));
  return sum / static_cast<double>(perms);
}

CheckReport verify_symmetrized_traces(const SuBasis& basis, const StructureConstants& sc,
                                      std::size_t tuples_per_arity, std::uint64_t seed,
                                      double tolerance) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, basis.dim() - 1);
  CheckReport report;
  report.name = "symmetrized traces su(" + std::to_string(basis.n) + ")";
  report.tolerance = tolerance;
  report.seed = seed;
  report.samples = tuples_per_arity * 5;
  for (int k = 2; k <= 6; ++k) {
    double worst = 0.0;
    std::vector<int> tuple(k);
    for (std::size_t s = 0; s < tuples_per_arity; ++s) {
      for (auto& i : tuple) i = pick(rng);
      const double direct = symmetrized_trace(basis, tuple);
      const double closed = symmetrized_trace_closed_form(sc, tuple);
      worst = std::max(worst, std::abs(direct - closed));
    }
    report.items.push_back({"arity " + std::to_string(k), worst});
  }
  return report;
}

CheckReport verify_symmetrized_traces_exhaustive(const SuBasis& basis, const StructureConstants& sc,
                                                 double tolerance) {
  CheckReport report;
  report.name = "symmetrized traces su(" + std::to_string(basis.n) + ") exhaustive";
  report.tolerance = tolerance;
  const int dim = basis.dim();
  for (int k = 2; k <= 6; ++k) {
    double worst = 0.0;
    // Non-decreasing tuples; both routes are symmetric in their indices.
    std::vector<int> tuple(k, 0);
    while (true) {
      const double direct = symmetrized_trace(basis, tuple);
      const double closed = symmetrized_trace_closed_form(sc, tuple);
      worst = std::max(worst, std::abs(direct - closed));
      ++report.samples;
      int pos = k - 1;
      while (pos >= 0 && tuple[pos] == dim - 1) --pos;
      if (pos < 0) break;
      ++tuple[pos];
      for (int q = pos + 1; q < k; ++q) tuple[q] = tuple[pos];
    }
    report.items.push_back({"arity " + std::to_string(k), worst});
  }
  return report;
}

int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

}  // namespace qqinv
