#include <cmath>
#include <random>

#include "doctest.h"
#include "qqinv/states.hpp"

using namespace qqinv;

namespace {

QubitQutritState gaussian_state(std::uint64_t seed, double scale = 0.2) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, scale);
  QubitQutritState s;
  for (auto& v : s.a) v = g(rng);
  for (auto& v : s.b) v = g(rng);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 8; ++k) s.C(i, k) = g(rng);
  return s;
}

double max_diff(const QubitQutritState& x, const QubitQutritState& y) {
  return std::max({(x.a - y.a).cwiseAbs().maxCoeff(), (x.b - y.b).cwiseAbs().maxCoeff(),
                   (x.C - y.C).cwiseAbs().maxCoeff()});
}

double min_eigenvalue(const CMatrix& m) {
  return Eigen::SelfAdjointEigenSolver<CMatrix>(m, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

}  // namespace

TEST_CASE("maximally mixed state") {
  const Matrix6c rho = to_matrix(QubitQutritState::maximally_mixed());
  CHECK((rho - Matrix6c::Identity() / 6.0).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(max_diff(from_matrix(CMatrix(Matrix6c::Identity() / 6.0)), {}) < 1e-15);
  CHECK((reduced_qubit({}) - Eigen::Matrix2cd::Identity() / 2.0).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((reduced_qutrit({}) - Eigen::Matrix3cd::Identity() / 3.0).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("qubit-major tensor layout") {
  QubitQutritState s;
  s.a = {0, 0, 1};
  const Matrix6c rho = to_matrix(s);
  Eigen::Matrix<double, 6, 1> expect;
  expect << 2, 2, 2, 0, 0, 0;
  CHECK((rho.diagonal().real() - expect / 6.0).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(rho.diagonal().imag().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("projection weights recover a single correlation entry") {
  const auto& s = pauli_matrices();
  const auto& l = gell_mann_matrices();
  CMatrix rho = CMatrix::Identity(6, 6);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) rho(3 * i + a, 3 * j + b) += s[0](i, j) * l[0](a, b);
  rho /= 6.0;
  const auto st = from_matrix(rho);
  QubitQutritState expect;
  expect.C(0, 0) = 1.0;
  CHECK(max_diff(st, expect) < 1e-15);
}

TEST_CASE("roundtrips") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto s = gaussian_state(seed);
    CHECK(max_diff(from_matrix(CMatrix(to_matrix(s))), s) < 1e-10);
    const auto bloch = to_bloch(s);
    CHECK(bloch.xi.size() == 35);
    CHECK(max_diff(from_bloch(bloch), s) < 1e-12);
  }
}

TEST_CASE("Bloch matrix agrees with the tensor su(6) basis") {
  const auto basis = build_basis(BasisLabel::Su6Tensor);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = gaussian_state(seed);
    const auto bloch = to_bloch(s);
    CHECK((to_matrix(bloch, basis) - CMatrix(to_matrix(s))).cwiseAbs().maxCoeff() < 1e-12);
    const auto back = bloch_from_matrix(CMatrix(to_matrix(s)), basis);
    CHECK((back.xi - bloch.xi).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(back.kappa == doctest::Approx(std::sqrt(15.0)));
  }
}

TEST_CASE("omega sectors: traceless, Hermitian, tr(omega^2) coefficients") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = gaussian_state(seed);
    const auto sec = sector_matrices(s);
    const Matrix6c omega = sec.alpha + sec.beta + sec.gamma;
    CHECK(std::abs(omega.trace()) < 1e-12);
    CHECK((omega - omega.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    const double expect = 6 * s.a.squaredNorm() + 4 * s.b.squaredNorm() + 4 * s.C.squaredNorm();
    CHECK(std::abs((omega * omega).trace().real() - expect) < 1e-10);
  }
}

TEST_CASE("partial traces match the reduced Bloch forms") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = gaussian_state(seed);
    const Matrix6c rho = to_matrix(s);
    CHECK((partial_trace_qutrit(rho) - reduced_qubit(s)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((partial_trace_qubit(rho) - reduced_qutrit(s)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(reduced_qubit(s).trace() - 1.0) < 1e-12);
    CHECK(std::abs(reduced_qutrit(s).trace() - 1.0) < 1e-12);
  }
  QubitQutritState c_only = gaussian_state(5);
  c_only.a.setZero();
  c_only.b.setZero();
  CHECK((reduced_qubit(c_only) - Eigen::Matrix2cd::Identity() / 2.0).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((reduced_qutrit(c_only) - Eigen::Matrix3cd::Identity() / 3.0).cwiseAbs().maxCoeff() < 1e-15);
  QubitQutritState a_only;
  a_only.a = {1, 0, 0};
  const Eigen::Matrix2cd expect = (Eigen::Matrix2cd::Identity() + pauli_matrices()[0]) / 2.0;
  CHECK((partial_trace_qutrit(to_matrix(a_only)) - expect).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("from_matrix rejects invalid input") {
  CMatrix bad = CMatrix::Identity(6, 6) / 6.0;
  bad(0, 1) = Complex(0.0, 0.1);
  CHECK_THROWS_AS(from_matrix(bad), RejectedInput);
  CHECK_THROWS_AS(from_matrix(CMatrix::Identity(6, 6)), RejectedInput);
  CHECK_THROWS_AS(from_matrix(CMatrix::Identity(5, 5) / 5.0), RejectedInput);
}

TEST_CASE("random ensembles") {
  const auto pure = random_density(11, {EnsembleKind::Pure, 1});
  const Matrix6c rp = to_matrix(pure);
  CHECK(std::abs((rp * rp).trace().real() - 1.0) < 1e-10);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    CHECK(min_eigenvalue(CMatrix(to_matrix(random_density(seed)))) > 0.0);
    const CMatrix r2 = to_matrix(random_density(seed, {EnsembleKind::RankK, 2}));
    const auto ev = Eigen::SelfAdjointEigenSolver<CMatrix>(r2, Eigen::EigenvaluesOnly).eigenvalues();
    CHECK(std::abs(ev(3)) < 1e-12);
    CHECK(ev(4) > 1e-9);
  }
  CHECK_THROWS_AS(random_density(1, {EnsembleKind::RankK, 7}), RejectedInput);
  CHECK(max_diff(random_density(42), random_density(42)) == 0.0);
}

TEST_CASE("non-PSD ensemble") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const CMatrix m = to_matrix(random_nonpsd_unit_trace(seed, -0.1));
    CHECK(min_eigenvalue(m) <= -0.1 + 1e-12);
    CHECK(std::abs(m.trace() - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(random_nonpsd_unit_trace(1, 0.0), RejectedInput);
  CHECK_THROWS_AS(random_nonpsd_unit_trace(1, -1.5), RejectedInput);
}

TEST_CASE("unitaries are special unitary") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (const Matrix6c& u : {random_local_unitary(seed), random_global_unitary(seed)}) {
      CHECK((u * u.adjoint() - Matrix6c::Identity()).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(std::abs(u.determinant() - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("local conjugation preserves the three sectors") {
  QubitQutritState a_only;
  a_only.a = {0.3, -0.2, 0.1};
  const auto moved = conjugate(a_only, random_local_unitary(3));
  CHECK(moved.b.norm() < 1e-12);
  CHECK(moved.C.norm() < 1e-12);
  CHECK(max_diff(conjugate({}, random_local_unitary(4)), {}) < 1e-15);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = random_density(seed);
    const auto t = conjugate(s, random_local_unitary(seed + 100));
    CHECK(std::abs(s.a.norm() - t.a.norm()) < 1e-9);
    CHECK(std::abs(s.b.norm() - t.b.norm()) < 1e-9);
    const Eigen::Vector3d sv_s = Eigen::JacobiSVD<Eigen::Matrix<double, 3, 8>>(s.C).singularValues();
    const Eigen::Vector3d sv_t = Eigen::JacobiSVD<Eigen::Matrix<double, 3, 8>>(t.C).singularValues();
    CHECK((sv_s - sv_t).cwiseAbs().maxCoeff() < 1e-9);
  }
}
