#pragma once

#include <cmath>
#include <stdexcept>

namespace zbr {

/// Speed of light in atomic units.
inline constexpr double kLightSpeedAu = 137.035999;

/// Model constants of the (2+1)-D Dirac oscillator, all in atomic units.
struct PhysicalParams {
  double mass = 1.0;
  double light_speed = kLightSpeedAu;
  double hbar = 1.0;
  double omega = 0.0;  ///< oscillator angular frequency

  static PhysicalParams atomic(double omega) {
    PhysicalParams p;
    p.omega = omega;
    return p;
  }

  [[nodiscard]] double rest_energy() const { return mass * light_speed * light_speed; }

  /// 4 hbar omega / (m c^2): the coefficient of n under the spectrum's square root.
  [[nodiscard]] double level_coupling() const { return 4.0 * hbar * omega / rest_energy(); }

  void validate() const {
    if (!(mass > 0.0) || !(light_speed > 0.0) || !(hbar > 0.0) || !(omega >= 0.0)) {
      throw std::invalid_argument("PhysicalParams: require m > 0, c > 0, hbar > 0, omega >= 0");
    }
    if (!std::isfinite(rest_energy()) || !std::isfinite(omega)) {
      throw std::invalid_argument("PhysicalParams: rest energy and omega must be finite");
    }
  }
};

enum class Branch { positive, negative };

constexpr double branch_sign(Branch b) { return b == Branch::positive ? 1.0 : -1.0; }

}  // namespace zbr
