#include "zbrevival/io.hpp"

#include <iomanip>
#include <ostream>

namespace zbr {

void write_trace_csv(std::ostream& out, const Trace& trace) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::defaultfloat << std::setprecision(17);
  out << "t,v_x_closed,v_x_oracle,autocorr_re,autocorr_im,autocorr_abs\n";
  for (int i = 0; i < trace.grid.n_samples; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out << trace.grid.time(i) << ',' << trace.v_x_closed[k] << ',';
    if (trace.v_x_oracle) out << (*trace.v_x_oracle)[k];
    const cdouble a = trace.autocorr[k];
    out << ',' << a.real() << ',' << a.imag() << ',' << std::abs(a) << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

void write_scan_csv(std::ostream& out, std::span<const ScanRow> rows) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::defaultfloat << std::setprecision(17);
  out << "omega,t_zb,t_cl,t_r\n";
  for (const ScanRow& row : rows) {
    out << row.omega << ',' << row.scales.t_zb << ',' << row.scales.t_cl << ',' << row.scales.t_r
        << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

nlohmann::json to_json(const RevivalReport& report) {
  nlohmann::json revivals = nlohmann::json::array();
  for (const RevivalEntry& e : report.revivals) {
    revivals.push_back({{"m", e.m},
                        {"expected_t", e.expected_t},
                        {"detected_t", e.detected_t},
                        {"ratio", e.ratio},
                        {"matched", e.matched}});
  }
  return {{"initial_amplitude", report.initial_amplitude},
          {"revivals", std::move(revivals)},
          {"threshold", report.threshold}};
}

nlohmann::json to_json(const TimeScales& scales) {
  return {{"t_zb", scales.t_zb}, {"t_cl", scales.t_cl}, {"t_r", scales.t_r}};
}

nlohmann::json to_json(const PhysicalParams& params) {
  return {{"mass", params.mass},
          {"light_speed", params.light_speed},
          {"hbar", params.hbar},
          {"omega", params.omega}};
}

nlohmann::json to_json(const TimeGrid& grid) {
  return {{"t_start", grid.t_start}, {"t_end", grid.t_end}, {"n_samples", grid.n_samples}};
}

}  // namespace zbr
