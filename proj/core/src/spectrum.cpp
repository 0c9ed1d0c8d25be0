#include "zbrevival/spectrum.hpp"

#include <cmath>
#include <string>

#include "zbrevival/errors.hpp"

namespace zbr {

namespace {

void require_state(int n, Branch branch) {
  if (n < 0) {
    throw DomainError("quantum number must be non-negative, got " + std::to_string(n));
  }
  if (n == 0 && branch == Branch::negative) {
    throw DomainError("the negative branch does not exist at n = 0");
  }
}

}  // namespace

double spectrum_radicand(const PhysicalParams& params, double n) {
  return 1.0 + params.level_coupling() * n;
}

double energy(const PhysicalParams& params, int n, Branch branch) {
  require_state(n, branch);
  return branch_sign(branch) * params.rest_energy() * std::sqrt(spectrum_radicand(params, n));
}

// E(n) = mc^2 sqrt(r), r = 1 + a n, a = 4 hbar omega / mc^2
//   E'  = mc^2 a / (2 sqrt r)       = 2 hbar omega / sqrt r
//   E'' = -mc^2 a^2 / (4 r^{3/2})   = -(2 hbar omega)^2 / (mc^2 r^{3/2})
double energy_first_derivative(const PhysicalParams& params, double n) {
  return 2.0 * params.hbar * params.omega / std::sqrt(spectrum_radicand(params, n));
}

double energy_second_derivative(const PhysicalParams& params, double n) {
  const double two_hw = 2.0 * params.hbar * params.omega;
  const double r = spectrum_radicand(params, n);
  return -two_hw * two_hw / (params.rest_energy() * r * std::sqrt(r));
}

double xi(const PhysicalParams& params, int n) {
  return 0.5 / std::sqrt(spectrum_radicand(params, n));
}

SpinorWeights spinor_weights(const PhysicalParams& params, int n) {
  const double x = xi(params, n);
  return {std::sqrt(0.5 + x), std::sqrt(0.5 - x)};
}

Eigenspinor eigenspinor(const PhysicalParams& params, int n, Branch branch) {
  require_state(n, branch);
  const auto [gamma, delta] = spinor_weights(params, n);
  Eigenspinor out{};
  if (branch == Branch::positive) {
    out.upper = {n, gamma};
    if (n > 0) out.lower = FockAmplitude{n - 1, delta};
  } else {
    out.upper = {n, -delta};
    out.lower = FockAmplitude{n - 1, gamma};
  }
  return out;
}

}  // namespace zbr
