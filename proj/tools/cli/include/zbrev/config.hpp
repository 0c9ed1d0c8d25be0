#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "zbrevival/analysis.hpp"
#include "zbrevival/dynamics.hpp"
#include "zbrevival/params.hpp"
#include "zbrevival/timescales.hpp"
#include "zbrevival/wavepacket.hpp"

namespace zbrev {

/// Bad flags, unknown presets, unreadable config or unwritable output paths.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Preset { fig1, fig2, fig3, fig4 };
enum class Panel { zb, classical, revival };

[[nodiscard]] Preset parse_preset(std::string_view name);
[[nodiscard]] Panel parse_panel(std::string_view name);
[[nodiscard]] std::string_view to_string(Panel panel);

/// Everything a user may set, from flags or a flat JSON config file. Unset
/// fields fall back to the preset, then to built-in defaults.
struct RunConfig {
  std::optional<Preset> preset;
  std::optional<double> omega;
  std::optional<int> n0;
  std::optional<double> sigma;
  std::optional<int> n_max;
  std::optional<double> light_speed;
  std::optional<Panel> panel;
  std::optional<double> t_start;
  std::optional<double> t_end;
  std::optional<int> samples;
  std::optional<bool> oracle;
  std::optional<std::filesystem::path> out_dir;
  std::optional<std::filesystem::path> calibration;
  std::optional<int> threads;

  /// Fields set in `over` replace the ones here.
  void overlay(const RunConfig& over);

  /// Keys mirror the long flag names ("omega", "nmax", "t-start", ...).
  /// Unknown keys raise UsageError.
  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig from_file(const std::filesystem::path& path);
};

/// Fully resolved, validated run parameters.
struct ResolvedRun {
  bool scan_only = false;  ///< fig4: omega scan, no trace
  zbr::PhysicalParams params;
  zbr::PacketSpec packet;
  int oracle_n_max = 0;
  zbr::TimeScales scales;
  Panel panel = Panel::classical;
  zbr::TimeGrid grid;
  bool oracle = true;
  std::filesystem::path out_dir = ".";
  double revival_threshold = zbr::kDefaultRevivalThreshold;
  int threads = 0;
};

[[nodiscard]] ResolvedRun resolve(const RunConfig& config);

/// Reads "revival_threshold" from a calibration file.
[[nodiscard]] double load_revival_threshold(const std::filesystem::path& path);

}  // namespace zbrev
