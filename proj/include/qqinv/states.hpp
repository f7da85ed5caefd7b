#pragma once

#include <cstdint>
#include <vector>

#include "qqinv/su_algebra.hpp"
#include "qqinv/types.hpp"

namespace qqinv {

using Matrix6c = Eigen::Matrix<Complex, 6, 6>;

/// Bloch coordinates of an n-level density matrix:
/// rho = (I + kappa xi . lambda) / n with kappa = sqrt(n(n-1)/2).
struct BlochState {
  int n = 0;
  RVector xi;
  double kappa = 0.0;
};

double bloch_kappa(int n);

CMatrix to_matrix(const BlochState& state, const SuBasis& basis);
BlochState bloch_from_matrix(const CMatrix& rho, const SuBasis& basis);

/// Qubit-qutrit state in the (a, b, C) parametrization
///   rho = (I_6 + alpha + beta + gamma) / 6
///   alpha = a_i sigma_i (x) I_3, beta = b_a I_2 (x) lambda_a,
///   gamma = c_ia sigma_i (x) lambda_a.
/// Tensor ordering is qubit-major: row 3 i + a (0-based).
struct QubitQutritState {
  Eigen::Vector3d a = Eigen::Vector3d::Zero();
  Eigen::Matrix<double, 8, 1> b = Eigen::Matrix<double, 8, 1>::Zero();
  Eigen::Matrix<double, 3, 8> C = Eigen::Matrix<double, 3, 8>::Zero();

  static QubitQutritState maximally_mixed() { return {}; }
};

/// The three traceless sectors of omega = 6 rho - I.
struct SectorMatrices {
  Matrix6c alpha;
  Matrix6c beta;
  Matrix6c gamma;
};

SectorMatrices sector_matrices(const QubitQutritState& state);

Matrix6c to_matrix(const QubitQutritState& state);

/// Inverse of to_matrix. Rejects input that is not Hermitian to 1e-9 or whose
/// trace differs from 1 by more than 1e-9.
QubitQutritState from_matrix(const CMatrix& rho);

/// Coordinates in the 35-element tensor su(6) basis, in its enumeration order.
BlochState to_bloch(const QubitQutritState& state);
QubitQutritState from_bloch(const BlochState& bloch);

Eigen::Matrix2cd reduced_qubit(const QubitQutritState& state);
Eigen::Matrix3cd reduced_qutrit(const QubitQutritState& state);

/// Full-matrix partial traces (qubit-major ordering), used as an oracle.
Eigen::Matrix2cd partial_trace_qutrit(const Matrix6c& rho);
Eigen::Matrix3cd partial_trace_qubit(const Matrix6c& rho);

enum class EnsembleKind { GinibreFullRank, Pure, RankK };

struct Ensemble {
  EnsembleKind kind = EnsembleKind::GinibreFullRank;
  int rank = 6;  // used only by RankK
};

/// from_matrix(A A^dag / tr(A A^dag)) with A a seeded 6 x r complex Gaussian.
QubitQutritState random_density(std::uint64_t seed, Ensemble ensemble = {});

/// Hermitian, unit trace, smallest eigenvalue <= min_negative_eigenvalue.
/// min_negative_eigenvalue must lie in [-1, 0).
QubitQutritState random_nonpsd_unit_trace(std::uint64_t seed, double min_negative_eigenvalue);

/// Haar-random element of SU(n).
CMatrix haar_special_unitary(int n, std::uint64_t seed);

/// k1 (x) k2 with k1 Haar in SU(2), k2 Haar in SU(3).
Matrix6c random_local_unitary(std::uint64_t seed);
/// Haar-random SU(6).
Matrix6c random_global_unitary(std::uint64_t seed);

/// The state of U rho U^dag.
QubitQutritState conjugate(const QubitQutritState& state, const Matrix6c& unitary);

/// `size` states, the i-th drawn from random_density with a seed derived from
/// (seed, i).
std::vector<QubitQutritState> make_panel(std::uint64_t seed, std::size_t size,
                                         Ensemble ensemble = {});

/// Seed derivation shared by every panel generator.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// max |H - H^dag| entry.
double hermiticity_deviation(const CMatrix& m);

}  // namespace qqinv
