#pragma once

#include <iosfwd>
#include <span>

#include <nlohmann/json.hpp>

#include "zbrevival/analysis.hpp"
#include "zbrevival/dynamics.hpp"
#include "zbrevival/timescales.hpp"

namespace zbr {

/// Header: t,v_x_closed,v_x_oracle,autocorr_re,autocorr_im,autocorr_abs.
/// v_x_oracle is left empty when the trace has no oracle column. 17 significant digits.
void write_trace_csv(std::ostream& out, const Trace& trace);

/// Header: omega,t_zb,t_cl,t_r.
void write_scan_csv(std::ostream& out, std::span<const ScanRow> rows);

/// {initial_amplitude, revivals: [{m, expected_t, detected_t, ratio, matched}], threshold}
[[nodiscard]] nlohmann::json to_json(const RevivalReport& report);
[[nodiscard]] nlohmann::json to_json(const TimeScales& scales);
[[nodiscard]] nlohmann::json to_json(const PhysicalParams& params);
[[nodiscard]] nlohmann::json to_json(const TimeGrid& grid);

}  // namespace zbr
