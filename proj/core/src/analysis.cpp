#include "zbrevival/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "zbrevival/errors.hpp"

namespace zbr {

Envelope zb_envelope(std::span<const double> times, std::span<const double> values, double t_zb) {
  if (times.size() != values.size() || times.size() < 2) {
    throw std::invalid_argument("zb_envelope: need at least two samples with matching values");
  }
  if (!(t_zb > 0.0)) throw std::invalid_argument("zb_envelope: ZB period must be positive");
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double dt = times[i] - times[i - 1];
    if (!(dt > 0.0)) throw std::invalid_argument("zb_envelope: times must increase");
    if (dt > t_zb / kMinSamplesPerZbPeriod * (1.0 + 1e-9)) {
      throw SamplingError("sampling too coarse for ZB analysis: dt = " + std::to_string(dt) +
                          " exceeds T_ZB/20 = " + std::to_string(t_zb / kMinSamplesPerZbPeriod));
    }
  }

  Envelope env;
  env.window_width = t_zb;
  env.t_start = times.front();
  env.t_end = times.back();

  std::size_t i = 0;
  while (i < times.size()) {
    const auto k = static_cast<long>(std::floor((times[i] - env.t_start) / t_zb));
    const double lo = env.t_start + k * t_zb;
    const double hi = lo + t_zb;
    double vmax = -std::numeric_limits<double>::infinity();
    double vmin = std::numeric_limits<double>::infinity();
    int count = 0;
    for (; i < times.size() && std::floor((times[i] - env.t_start) / t_zb) == k; ++i) {
      vmax = std::max(vmax, values[i]);
      vmin = std::min(vmin, values[i]);
      ++count;
    }
    env.window_centers.push_back(0.5 * (lo + hi));
    env.amplitudes.push_back(0.5 * (vmax - vmin));
    env.window_samples.push_back(count);
  }
  // A trailing partial window is centred on the part the samples actually cover.
  const double last_lo = env.window_centers.back() - 0.5 * t_zb;
  if (last_lo + t_zb > env.t_end) env.window_centers.back() = 0.5 * (last_lo + env.t_end);
  return env;
}

Envelope zb_envelope(const Trace& trace, double t_zb) {
  return zb_envelope(trace.grid.times(), trace.v_x_closed, t_zb);
}

RevivalReport detect_revivals(const Envelope& env, const RevivalOptions& options) {
  if (!(options.t_r > 0.0) || !(options.t_cl > 0.0) || options.m_max < 1) {
    throw std::invalid_argument("detect_revivals: need T_R > 0, T_CL > 0, m_max >= 1");
  }
  if (env.amplitudes.empty()) throw CoverageError("detect_revivals: empty envelope");
  const double needed = env.t_start + options.m_max * options.t_r / 2.0;
  if (env.t_end < needed) {
    throw CoverageError("envelope ends at t = " + std::to_string(env.t_end) +
                        " before m_max T_R / 2 = " + std::to_string(needed));
  }

  RevivalReport report;
  report.threshold = options.threshold;
  report.search_fraction = options.search_fraction;
  for (std::size_t k = 0; k < env.amplitudes.size(); ++k) {
    if (env.window_centers[k] >= env.t_start + options.t_cl) break;
    report.initial_amplitude = std::max(report.initial_amplitude, env.amplitudes[k]);
  }
  if (!(report.initial_amplitude > 0.0)) {
    throw ContractError("detect_revivals: initial ZB amplitude is zero");
  }

  for (int m = 1; m <= options.m_max; ++m) {
    RevivalEntry entry;
    entry.m = m;
    entry.expected_t = m * options.t_r / 2.0;
    const double lo = env.t_start + entry.expected_t * (1.0 - options.search_fraction);
    const double hi = env.t_start + entry.expected_t * (1.0 + options.search_fraction);
    double best = -1.0;
    for (std::size_t k = 0; k < env.amplitudes.size(); ++k) {
      const double tc = env.window_centers[k];
      if (tc < lo || tc > hi) continue;
      if (env.amplitudes[k] > best) {
        best = env.amplitudes[k];
        entry.detected_t = tc;
      }
    }
    if (best < 0.0) {
      throw CoverageError("no envelope window near m T_R / 2 for m = " + std::to_string(m));
    }
    entry.ratio = best / report.initial_amplitude;
    entry.matched = entry.ratio >= options.threshold;
    report.revivals.push_back(entry);
  }
  return report;
}

QuasiclassicalDecay quasiclassical_decay(const Envelope& env, double t_cl, int n_periods) {
  if (!(t_cl > 0.0) || n_periods < 1) {
    throw std::invalid_argument("quasiclassical_decay: need T_CL > 0 and n_periods >= 1");
  }
  if (env.t_end < env.t_start + n_periods * t_cl) {
    throw CoverageError("envelope covers fewer than " + std::to_string(n_periods) +
                        " classical periods");
  }
  QuasiclassicalDecay out;
  out.period_peaks.assign(static_cast<std::size_t>(n_periods), 0.0);
  out.period_means.assign(static_cast<std::size_t>(n_periods), 0.0);
  std::vector<int> counts(static_cast<std::size_t>(n_periods), 0);
  for (std::size_t k = 0; k < env.amplitudes.size(); ++k) {
    const auto p = static_cast<long>(std::floor((env.window_centers[k] - env.t_start) / t_cl));
    if (p < 0 || p >= n_periods) continue;
    const auto i = static_cast<std::size_t>(p);
    out.period_peaks[i] = std::max(out.period_peaks[i], env.amplitudes[k]);
    out.period_means[i] += env.amplitudes[k];
    ++counts[i];
  }
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0) out.period_means[i] /= counts[i];
  }

  out.strictly_decreasing = true;
  for (int k = 1; k < n_periods; ++k) {
    const auto i = static_cast<std::size_t>(k);
    if (out.period_peaks[i] >= out.period_peaks[i - 1]) {
      out.strictly_decreasing = false;
      if (!out.flattening_period) out.flattening_period = k;
    }
  }
  return out;
}

}  // namespace zbr
