#pragma once

#include <Eigen/Dense>

#include "zbrevival/params.hpp"

namespace zbr {

enum class SpinorComponent { upper = 0, lower = 1 };

/// Dense matrix representation of the Dirac oscillator in a truncated
/// Fock (x) spinor basis, used as an independent check on the closed forms.
///
/// Basis ordering is Fock-major: index = 2 * fock + component, with
/// component 0 = upper spinor entry and 1 = lower, fock in [0, n_max].
///
///   H   = mc^2 (|up,k><up,k| - |lo,k><lo,k|)
///         + 2c sqrt(m omega hbar) sqrt(k) (|up,k><lo,k-1| + h.c.)
///   v_x = i[H, x]/hbar = c alpha_x = c sigma_x (x) 1
///   v_y = c sigma_y (x) 1
///
/// Only the position operator enters H through the momentum shift, so the
/// commutator leaves c times the Dirac alpha matrix, which in 2+1 dimensions is
/// the Pauli matrix acting on the spinor index.
struct TruncatedModel {
  int n_max = 0;
  PhysicalParams params;
  Eigen::MatrixXd hamiltonian;
  Eigen::MatrixXd velocity_x;
  Eigen::MatrixXcd velocity_y;

  [[nodiscard]] Eigen::Index dimension() const { return hamiltonian.rows(); }
};

inline constexpr int kMaxFockCutoff = 1'000'000;

/// Eigenpairs with n within this distance of n_max are excluded from oracle comparisons.
inline constexpr int kTruncationGuardBand = 2;

[[nodiscard]] constexpr Eigen::Index basis_index(int fock, SpinorComponent component) {
  return 2 * static_cast<Eigen::Index>(fock) + static_cast<Eigen::Index>(component);
}

/// Throws std::invalid_argument for n_max < 1, SizeError above kMaxFockCutoff.
[[nodiscard]] TruncatedModel build_truncated_model(const PhysicalParams& params, int n_max);

/// All eigenvalues of model.hamiltonian, ascending (dense self-adjoint solver).
[[nodiscard]] Eigen::VectorXd sorted_eigenvalues(const TruncatedModel& model);

/// Eigenspinor of (n, branch) embedded as a column vector in the model basis.
[[nodiscard]] Eigen::VectorXd embed_eigenspinor(const TruncatedModel& model, int n, Branch branch);

}  // namespace zbr
