#pragma once

#include <span>
#include <vector>

#include "zbrevival/params.hpp"

namespace zbr {

struct TimeScales {
  double t_zb = 0.0;  ///< Zitterbewegung period
  double t_cl = 0.0;  ///< classical period
  double t_r = 0.0;   ///< revival time
};

/// T_CL = (pi/omega) sqrt(1 + 4 hbar omega n0 / mc^2). DivergenceError at omega = 0.
[[nodiscard]] double classical_period(const PhysicalParams& params, int n0);

/// T_R = (pi mc^2 / (hbar omega^2)) (1 + 4 hbar omega n0 / mc^2)^{3/2}. DivergenceError at omega = 0.
[[nodiscard]] double revival_time(const PhysicalParams& params, int n0);

/// T_ZB = pi hbar / E_{n0}^+, finite in the free limit.
[[nodiscard]] double zb_period(const PhysicalParams& params, int n0);

[[nodiscard]] TimeScales time_scales(const PhysicalParams& params, int n0);

/// Cross-check of the closed-form periods against the Taylor coefficients of
/// the spectrum, T_CL = 2 pi hbar/|E'| and T_R = 4 pi hbar/|E''|.
struct DerivativeReport {
  double first_analytic = 0.0;
  double second_analytic = 0.0;
  double first_central_difference = 0.0;   ///< (E_{n0+1} - E_{n0-1}) / 2
  double second_central_difference = 0.0;  ///< E_{n0+1} - 2 E_{n0} + E_{n0-1}

  double classical_from_derivative = 0.0;
  double revival_from_derivative = 0.0;
  double classical_rel_error = 0.0;  ///< vs classical_period()
  double revival_rel_error = 0.0;    ///< vs revival_time()

  double first_fd_rel_error = 0.0;
  double second_fd_rel_error = 0.0;

  /// |T_R/T_CL - (mc^2/(hbar omega)) (1 + 4 hbar omega n0/mc^2)| / that ratio
  double ratio_identity_rel_error = 0.0;
};

/// Requires omega > 0 and n0 >= 1 (the stencil reaches n0 - 1).
[[nodiscard]] DerivativeReport derivative_consistency_check(const PhysicalParams& params, int n0);

struct ScanRow {
  double omega = 0.0;
  TimeScales scales;
};

/// One row per omega; omega values must be strictly positive.
[[nodiscard]] std::vector<ScanRow> omega_scan(const PhysicalParams& base, int n0,
                                              std::span<const double> omegas);

/// count log-spaced values covering [lo, hi] inclusive.
[[nodiscard]] std::vector<double> log_spaced(double lo, double hi, int count);

/// omega in [1e2, 1e4], 50 log-spaced points.
[[nodiscard]] std::vector<double> default_scan_omegas();

}  // namespace zbr
