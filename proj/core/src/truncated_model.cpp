#include "zbrevival/truncated_model.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "zbrevival/errors.hpp"
#include "zbrevival/spectrum.hpp"

namespace zbr {

TruncatedModel build_truncated_model(const PhysicalParams& params, int n_max) {
  params.validate();
  if (n_max < 1) {
    throw std::invalid_argument("Fock cutoff must be >= 1");
  }
  if (n_max > kMaxFockCutoff) {
    throw SizeError("Fock cutoff " + std::to_string(n_max) + " exceeds " +
                    std::to_string(kMaxFockCutoff));
  }

  const Eigen::Index dim = 2 * (static_cast<Eigen::Index>(n_max) + 1);
  const double mc2 = params.rest_energy();
  const double coupling =
      2.0 * params.light_speed * std::sqrt(params.mass * params.omega * params.hbar);
  const double c = params.light_speed;
  constexpr auto up = SpinorComponent::upper;
  constexpr auto lo = SpinorComponent::lower;

  TruncatedModel model;
  model.n_max = n_max;
  model.params = params;
  model.hamiltonian = Eigen::MatrixXd::Zero(dim, dim);
  model.velocity_x = Eigen::MatrixXd::Zero(dim, dim);
  model.velocity_y = Eigen::MatrixXcd::Zero(dim, dim);

  for (int k = 0; k <= n_max; ++k) {
    const auto iu = basis_index(k, up);
    const auto il = basis_index(k, lo);
    model.hamiltonian(iu, iu) = mc2;
    model.hamiltonian(il, il) = -mc2;
    if (k > 0) {
      // <k|a^+|k-1> = sqrt(k)
      const auto jl = basis_index(k - 1, lo);
      const double h = coupling * std::sqrt(static_cast<double>(k));
      model.hamiltonian(iu, jl) = h;
      model.hamiltonian(jl, iu) = h;
    }
    model.velocity_x(iu, il) = c;
    model.velocity_x(il, iu) = c;
    model.velocity_y(iu, il) = std::complex<double>(0.0, -c);
    model.velocity_y(il, iu) = std::complex<double>(0.0, c);
  }
  return model;
}

Eigen::VectorXd sorted_eigenvalues(const TruncatedModel& model) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(model.hamiltonian,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("dense eigensolver did not converge");
  }
  return solver.eigenvalues();
}

Eigen::VectorXd embed_eigenspinor(const TruncatedModel& model, int n, Branch branch) {
  if (n > model.n_max) {
    throw ContractError("eigenspinor n = " + std::to_string(n) + " lies beyond the model cutoff");
  }
  const Eigenspinor s = eigenspinor(model.params, n, branch);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(model.dimension());
  v(basis_index(s.upper.fock, SpinorComponent::upper)) = s.upper.amplitude;
  if (s.lower) v(basis_index(s.lower->fock, SpinorComponent::lower)) = s.lower->amplitude;
  return v;
}

}  // namespace zbr
