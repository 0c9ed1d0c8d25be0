#pragma once

#include <optional>
#include <span>
#include <vector>

#include "zbrevival/dynamics.hpp"

namespace zbr {

/// Slowly varying amplitude of the fast ZB oscillation.
///
/// The sample range is cut into consecutive windows of one ZB period,
/// [t0 + k T, t0 + (k+1) T), and each window contributes (max - min)/2 of the
/// signal. The last window may be partial. Exact for a pure cosine up to the
/// sampling phase (about 1% at 20 samples per period).
struct Envelope {
  double window_width = 0.0;
  double t_start = 0.0;
  double t_end = 0.0;
  std::vector<double> window_centers;
  std::vector<double> amplitudes;
  std::vector<int> window_samples;
};

/// Minimum samples per ZB period required by zb_envelope.
inline constexpr double kMinSamplesPerZbPeriod = 20.0;

/// Throws SamplingError when the spacing exceeds t_zb / 20.
[[nodiscard]] Envelope zb_envelope(std::span<const double> times, std::span<const double> values,
                                   double t_zb);

/// Envelope of trace.v_x_closed.
[[nodiscard]] Envelope zb_envelope(const Trace& trace, double t_zb);

/// Calibrated against the fig1 preset (n0=30, sigma=3, omega=1e3); see data/calibration.json.
inline constexpr double kDefaultRevivalThreshold = 0.8;
inline constexpr double kDefaultRevivalSearchFraction = 0.1;

struct RevivalOptions {
  double t_r = 0.0;
  double t_cl = 0.0;
  int m_max = 2;
  double threshold = kDefaultRevivalThreshold;
  double search_fraction = kDefaultRevivalSearchFraction;
};

struct RevivalEntry {
  int m = 0;
  double expected_t = 0.0;  ///< m T_R / 2
  double detected_t = 0.0;
  double ratio = 0.0;
  bool matched = false;
};

struct RevivalReport {
  /// Envelope peak within the first classical period: the fully phased ZB amplitude.
  double initial_amplitude = 0.0;
  double threshold = 0.0;
  double search_fraction = 0.0;
  std::vector<RevivalEntry> revivals;
};

/// Looks for the envelope maximum within +/- search_fraction of m T_R/2 for
/// m = 1..m_max and compares it with the initial amplitude.
/// Throws CoverageError when the envelope ends before m_max T_R / 2.
[[nodiscard]] RevivalReport detect_revivals(const Envelope& env, const RevivalOptions& options);

struct QuasiclassicalDecay {
  std::vector<double> period_peaks;  ///< max envelope per classical period
  std::vector<double> period_means;
  bool strictly_decreasing = false;  ///< over period_peaks
  /// First period k >= 1 whose peak is not below the previous one, i.e. where
  /// the period-to-period decrease has stopped.
  std::optional<int> flattening_period;
};

/// Throws CoverageError when the envelope is shorter than n_periods T_CL.
[[nodiscard]] QuasiclassicalDecay quasiclassical_decay(const Envelope& env, double t_cl,
                                                       int n_periods);

}  // namespace zbr
