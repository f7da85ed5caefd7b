#include "qqinv/states.hpp"

#include <array>
#include <cmath>
#include <random>
#include <sstream>

namespace qqinv {

namespace {

Matrix6c kron6(const Eigen::Matrix2cd& a, const Eigen::Matrix3cd& b) {
  Matrix6c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<3, 3>(3 * i, 3 * j) = a(i, j) * b;
  return out;
}

const std::vector<Eigen::Matrix2cd>& sigma2() {
  static const std::vector<Eigen::Matrix2cd> s = [] {
    std::vector<Eigen::Matrix2cd> out;
    for (const auto& m : pauli_matrices()) out.emplace_back(m);
    return out;
  }();
  return s;
}

const std::vector<Eigen::Matrix3cd>& lambda3() {
  static const std::vector<Eigen::Matrix3cd> l = [] {
    std::vector<Eigen::Matrix3cd> out;
    for (const auto& m : gell_mann_matrices()) out.emplace_back(m);
    return out;
  }();
  return l;
}

// sigma_i (x) I_3, I_2 (x) lambda_a, sigma_i (x) lambda_a
struct ProductBasis {
  std::array<Matrix6c, 3> qubit;
  std::array<Matrix6c, 8> qutrit;
  std::array<std::array<Matrix6c, 8>, 3> mixed;
};

const ProductBasis& product_basis() {
  static const ProductBasis pb = [] {
    ProductBasis p;
    const Eigen::Matrix2cd id2 = Eigen::Matrix2cd::Identity();
    const Eigen::Matrix3cd id3 = Eigen::Matrix3cd::Identity();
    for (int i = 0; i < 3; ++i) p.qubit[i] = kron6(sigma2()[i], id3);
    for (int a = 0; a < 8; ++a) p.qutrit[a] = kron6(id2, lambda3()[a]);
    for (int i = 0; i < 3; ++i)
      for (int a = 0; a < 8; ++a) p.mixed[i][a] = kron6(sigma2()[i], lambda3()[a]);
    return p;
  }();
  return pb;
}

// Re tr(A B)
double re_trace_product(const CMatrix& a, const Matrix6c& b) {
  return (a.cwiseProduct(b.transpose())).sum().real();
}

CMatrix ginibre(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix z(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  return z;
}

// Haar U(n) via QR of a Ginibre matrix with the diagonal phases of R fixed.
CMatrix haar_unitary(int n, std::mt19937_64& rng) {
  const CMatrix z = ginibre(n, n, rng);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    q.col(j) *= mag > 0 ? rjj / mag : Complex(1.0);
  }
  return q;
}

}  // namespace

double bloch_kappa(int n) { return std::sqrt(n * (n - 1) / 2.0); }

CMatrix to_matrix(const BlochState& state, const SuBasis& basis) {
  if (state.n != basis.n || state.xi.size() != basis.dim())
    throw RejectedInput("Bloch vector dimension does not match the basis");
  CMatrix omega = CMatrix::Zero(basis.n, basis.n);
  for (int i = 0; i < basis.dim(); ++i) omega += state.xi(i) * basis.elements[i];
  return (CMatrix::Identity(basis.n, basis.n) + state.kappa * omega) / static_cast<double>(basis.n);
}

BlochState bloch_from_matrix(const CMatrix& rho, const SuBasis& basis) {
  if (rho.rows() != basis.n || rho.cols() != basis.n)
    throw RejectedInput("matrix size does not match the basis");
  BlochState s;
  s.n = basis.n;
  s.kappa = bloch_kappa(basis.n);
  s.xi.resize(basis.dim());
  // tr(rho t_i) = tr(omega t_i) / n = 2 kappa xi_i / n
  for (int i = 0; i < basis.dim(); ++i) {
    const double t = (rho.cwiseProduct(basis.elements[i].transpose())).sum().real();
    s.xi(i) = t * basis.n / (2.0 * s.kappa);
  }
  return s;
}

SectorMatrices sector_matrices(const QubitQutritState& state) {
  const auto& pb = product_basis();
  SectorMatrices m;
  m.alpha.setZero();
  m.beta.setZero();
  m.gamma.setZero();
  for (int i = 0; i < 3; ++i) m.alpha += state.a(i) * pb.qubit[i];
  for (int a = 0; a < 8; ++a) m.beta += state.b(a) * pb.qutrit[a];
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 8; ++a) m.gamma += state.C(i, a) * pb.mixed[i][a];
  return m;
}

Matrix6c to_matrix(const QubitQutritState& state) {
  const SectorMatrices s = sector_matrices(state);
  return (Matrix6c::Identity() + s.alpha + s.beta + s.gamma) / 6.0;
}

double hermiticity_deviation(const CMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

QubitQutritState from_matrix(const CMatrix& rho) {
  if (rho.rows() != 6 || rho.cols() != 6)
    throw RejectedInput("density matrix must be 6x6, got " + std::to_string(rho.rows()) + "x" +
                        std::to_string(rho.cols()));
  const double herm = hermiticity_deviation(rho);
  if (!(herm <= 1e-9)) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian (max |rho - rho^dag| = " << herm << ")";
    throw RejectedInput(msg.str());
  }
  const double tr_dev = std::abs(rho.trace() - Complex(1.0));
  if (!(tr_dev <= 1e-9)) {
    std::ostringstream msg;
    msg << "matrix trace deviates from 1 by " << tr_dev;
    throw RejectedInput(msg.str());
  }
  const auto& pb = product_basis();
  QubitQutritState s;
  for (int i = 0; i < 3; ++i) s.a(i) = re_trace_product(rho, pb.qubit[i]);
  for (int a = 0; a < 8; ++a) s.b(a) = 1.5 * re_trace_product(rho, pb.qutrit[a]);
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 8; ++a) s.C(i, a) = 1.5 * re_trace_product(rho, pb.mixed[i][a]);
  return s;
}

BlochState to_bloch(const QubitQutritState& state) {
  BlochState s;
  s.n = 6;
  s.kappa = bloch_kappa(6);
  s.xi.resize(35);
  const double r3 = std::sqrt(3.0) / s.kappa;
  const double r2 = std::sqrt(2.0) / s.kappa;
  for (int i = 0; i < 3; ++i) s.xi(i) = r3 * state.a(i);
  for (int a = 0; a < 8; ++a) s.xi(3 + a) = r2 * state.b(a);
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 8; ++a) s.xi(11 + 8 * i + a) = r2 * state.C(i, a);
  return s;
}

QubitQutritState from_bloch(const BlochState& bloch) {
  if (bloch.n != 6 || bloch.xi.size() != 35)
    throw RejectedInput("qubit-qutrit states need a 35-component su(6) Bloch vector");
  const double kappa = bloch_kappa(6);
  const double r3 = kappa / std::sqrt(3.0);
  const double r2 = kappa / std::sqrt(2.0);
  QubitQutritState s;
  for (int i = 0; i < 3; ++i) s.a(i) = r3 * bloch.xi(i);
  for (int a = 0; a < 8; ++a) s.b(a) = r2 * bloch.xi(3 + a);
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 8; ++a) s.C(i, a) = r2 * bloch.xi(11 + 8 * i + a);
  return s;
}

Eigen::Matrix2cd partial_trace_qutrit(const Matrix6c& rho) {
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int a = 0; a < 3; ++a) out(i, j) += rho(3 * i + a, 3 * j + a);
  return out;
}

Eigen::Matrix3cd partial_trace_qubit(const Matrix6c& rho) {
  Eigen::Matrix3cd out = Eigen::Matrix3cd::Zero();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int i = 0; i < 2; ++i) out(a, b) += rho(3 * i + a, 3 * i + b);
  return out;
}

Eigen::Matrix2cd reduced_qubit(const QubitQutritState& state) {
  return partial_trace_qutrit(to_matrix(state));
}

Eigen::Matrix3cd reduced_qutrit(const QubitQutritState& state) {
  return partial_trace_qubit(to_matrix(state));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over the pair
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

QubitQutritState random_density(std::uint64_t seed, Ensemble ensemble) {
  int r = 6;
  switch (ensemble.kind) {
    case EnsembleKind::GinibreFullRank: r = 6; break;
    case EnsembleKind::Pure: r = 1; break;
    case EnsembleKind::RankK:
      if (ensemble.rank < 1 || ensemble.rank > 6)
        throw RejectedInput("rank must lie in 1..6, got " + std::to_string(ensemble.rank));
      r = ensemble.rank;
      break;
  }
  std::mt19937_64 rng(seed);
  const CMatrix a = ginibre(6, r, rng);
  CMatrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  // Remove the rounding-level anti-Hermitian part before validation.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return from_matrix(rho);
}

QubitQutritState random_nonpsd_unit_trace(std::uint64_t seed, double min_negative_eigenvalue) {
  const double m = min_negative_eigenvalue;
  if (!(m >= -1.0 && m < 0.0))
    throw RejectedInput("min_negative_eigenvalue must lie in [-1, 0)");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const CMatrix v = haar_unitary(6, rng);

  Eigen::Matrix<double, 6, 1> spectrum;
  spectrum(0) = m * (1.0 + 0.25 * unit(rng));
  int negatives = 1;
  if (unit(rng) < 0.5) {
    spectrum(1) = 0.5 * m * unit(rng);
    if (spectrum(1) == 0.0) spectrum(1) = 0.25 * m;
    negatives = 2;
  }
  const double remaining = 1.0 - spectrum.head(negatives).sum();
  Eigen::Matrix<double, 6, 1> w = Eigen::Matrix<double, 6, 1>::Zero();
  for (int i = negatives; i < 6; ++i) w(i) = 0.05 + unit(rng);
  const double wsum = w.sum();
  for (int i = negatives; i < 6; ++i) spectrum(i) = remaining * w(i) / wsum;

  CMatrix rho = v * spectrum.cast<Complex>().asDiagonal() * v.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho += (Complex(1.0) - rho.trace()) / 6.0 * CMatrix::Identity(6, 6);
  return from_matrix(rho);
}

CMatrix haar_special_unitary(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CMatrix u = haar_unitary(n, rng);
  const Complex det = u.determinant();
  u *= std::pow(det, -1.0 / n);
  return u;
}

Matrix6c random_local_unitary(std::uint64_t seed) {
  const Eigen::Matrix2cd k1 = haar_special_unitary(2, derive_seed(seed, 0));
  const Eigen::Matrix3cd k2 = haar_special_unitary(3, derive_seed(seed, 1));
  return kron6(k1, k2);
}

Matrix6c random_global_unitary(std::uint64_t seed) { return haar_special_unitary(6, seed); }

QubitQutritState conjugate(const QubitQutritState& state, const Matrix6c& unitary) {
  Matrix6c rho = unitary * to_matrix(state) * unitary.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return from_matrix(rho);
}

std::vector<QubitQutritState> make_panel(std::uint64_t seed, std::size_t size, Ensemble ensemble) {
  std::vector<QubitQutritState> panel;
  panel.reserve(size);
  for (std::size_t i = 0; i < size; ++i) panel.push_back(random_density(derive_seed(seed, i), ensemble));
  return panel;
}

}  // namespace qqinv
