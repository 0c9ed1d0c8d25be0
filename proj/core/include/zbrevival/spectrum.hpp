#pragma once

#include <optional>

#include "zbrevival/params.hpp"

namespace zbr {

/// Radicand 1 + 4 hbar omega n / (m c^2) shared by the spectrum, xi_n and the time scales.
[[nodiscard]] double spectrum_radicand(const PhysicalParams& params, double n);

/// E_n^{+/-} = +/- m c^2 sqrt(1 + 4 hbar omega n / (m c^2)).
/// Throws DomainError for (n = 0, negative) and for n < 0.
[[nodiscard]] double energy(const PhysicalParams& params, int n, Branch branch);

/// First and second derivatives of E_n^+ with respect to a continuous n.
[[nodiscard]] double energy_first_derivative(const PhysicalParams& params, double n);
[[nodiscard]] double energy_second_derivative(const PhysicalParams& params, double n);

/// xi_n = 1 / (2 sqrt(1 + 4 hbar omega n / (m c^2))), in (0, 1/2].
[[nodiscard]] double xi(const PhysicalParams& params, int n);

struct SpinorWeights {
  double gamma;  ///< sqrt(1/2 + xi_n)
  double delta;  ///< sqrt(1/2 - xi_n)
};

[[nodiscard]] SpinorWeights spinor_weights(const PhysicalParams& params, int n);

struct FockAmplitude {
  int fock;
  double amplitude;
};

/// Two-component eigenspinor of the Dirac-oscillator Hamiltonian.
///
/// The upper component sits on Fock state |n>, the lower one on |n-1>:
///   phi_n^+ = ( gamma_n |n>,  delta_n |n-1> )
///   phi_n^- = (-delta_n |n>,  gamma_n |n-1> )
/// Both are unit vectors, mutually orthogonal, and satisfy H phi = E phi for
/// the Hamiltonian with off-diagonal blocks 2c sqrt(m omega hbar) a^+ / a.
/// For n = 0 only the positive branch exists and has no lower component.
struct Eigenspinor {
  FockAmplitude upper;
  std::optional<FockAmplitude> lower;
};

[[nodiscard]] Eigenspinor eigenspinor(const PhysicalParams& params, int n, Branch branch);

}  // namespace zbr
