#include "zbrev/config.hpp"

#include <cmath>
#include <fstream>

#include "zbrevival/errors.hpp"

namespace zbrev {

namespace {

struct PresetValues {
  double omega;
  int n0;
  double sigma;
};

PresetValues preset_values(Preset p) {
  switch (p) {
    case Preset::fig1: return {1e3, 30, 3.0};
    case Preset::fig2: return {1e3, 15, 3.0};
    case Preset::fig3: return {1e3, 10, 20.0};
    case Preset::fig4: return {1e3, 30, 3.0};
  }
  throw UsageError("unknown preset");
}

template <typename T>
void take(std::optional<T>& dst, const std::optional<T>& src) {
  if (src) dst = src;
}

// Samples per ZB period used when the grid size is not given.
double default_samples_per_zb(Panel panel) {
  switch (panel) {
    case Panel::zb: return 100.0;
    case Panel::classical: return 40.0;
    case Panel::revival: return zbr::kMinSamplesPerZbPeriod;
  }
  return 40.0;
}

}  // namespace

Preset parse_preset(std::string_view name) {
  if (name == "fig1") return Preset::fig1;
  if (name == "fig2") return Preset::fig2;
  if (name == "fig3") return Preset::fig3;
  if (name == "fig4") return Preset::fig4;
  throw UsageError("unknown preset '" + std::string(name) + "' (expected fig1..fig4)");
}

Panel parse_panel(std::string_view name) {
  if (name == "zb") return Panel::zb;
  if (name == "classical") return Panel::classical;
  if (name == "revival") return Panel::revival;
  throw UsageError("unknown panel '" + std::string(name) + "' (expected zb, classical, revival)");
}

std::string_view to_string(Panel panel) {
  switch (panel) {
    case Panel::zb: return "zb";
    case Panel::classical: return "classical";
    case Panel::revival: return "revival";
  }
  return "?";
}

void RunConfig::overlay(const RunConfig& over) {
  take(preset, over.preset);
  take(omega, over.omega);
  take(n0, over.n0);
  take(sigma, over.sigma);
  take(n_max, over.n_max);
  take(light_speed, over.light_speed);
  take(panel, over.panel);
  take(t_start, over.t_start);
  take(t_end, over.t_end);
  take(samples, over.samples);
  take(oracle, over.oracle);
  take(out_dir, over.out_dir);
  take(calibration, over.calibration);
  take(threads, over.threads);
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw UsageError("config file must hold a flat JSON object");
  RunConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "preset") c.preset = parse_preset(value.get<std::string>());
      else if (key == "omega") c.omega = value.get<double>();
      else if (key == "n0") c.n0 = value.get<int>();
      else if (key == "sigma") c.sigma = value.get<double>();
      else if (key == "nmax") c.n_max = value.get<int>();
      else if (key == "light-speed") c.light_speed = value.get<double>();
      else if (key == "panel") c.panel = parse_panel(value.get<std::string>());
      else if (key == "t-start") c.t_start = value.get<double>();
      else if (key == "t-end") c.t_end = value.get<double>();
      else if (key == "samples") c.samples = value.get<int>();
      else if (key == "oracle") c.oracle = value.get<bool>();
      else if (key == "out-dir") c.out_dir = value.get<std::string>();
      else if (key == "calibration") c.calibration = value.get<std::string>();
      else if (key == "threads") c.threads = value.get<int>();
      else throw UsageError("unknown config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("config value has the wrong type: ") + e.what());
  }
  return c;
}

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
}

double load_revival_threshold(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read calibration file " + path.string());
  try {
    return nlohmann::json::parse(in).at("revival_threshold").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("calibration file " + path.string() + ": " + e.what());
  }
}

ResolvedRun resolve(const RunConfig& config) {
  ResolvedRun run;
  PresetValues base{1e3, 30, 3.0};
  if (config.preset) base = preset_values(*config.preset);
  run.scan_only = config.preset == Preset::fig4;

  run.params = zbr::PhysicalParams::atomic(config.omega.value_or(base.omega));
  run.params.light_speed = config.light_speed.value_or(zbr::kLightSpeedAu);
  try {
    run.params.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  run.packet.n0 = config.n0.value_or(base.n0);
  run.packet.sigma = config.sigma.value_or(base.sigma);
  if (run.packet.n0 < 1) throw UsageError("--n0 must be >= 1");
  if (!(run.packet.sigma > 0.0)) throw UsageError("--sigma must be positive");
  run.packet.n_max = config.n_max.value_or(zbr::recommend_cutoff(run.packet.n0, run.packet.sigma));
  if (run.packet.n_max <= run.packet.n0) throw UsageError("--nmax must exceed n0");
  run.oracle_n_max = run.packet.n_max + zbr::kTruncationGuardBand;

  run.oracle = config.oracle.value_or(true);
  run.out_dir = config.out_dir.value_or(".");
  run.threads = config.threads.value_or(0);
  if (config.calibration) run.revival_threshold = load_revival_threshold(*config.calibration);

  if (run.params.omega == 0.0) throw UsageError("--omega must be positive for a bound run");
  run.scales = zbr::time_scales(run.params, run.packet.n0);
  if (run.scan_only) return run;

  run.panel = config.panel.value_or(Panel::classical);
  double t0 = 0.0;
  double t1 = 0.0;
  switch (run.panel) {
    case Panel::zb: t1 = 6.0 * run.scales.t_zb; break;
    case Panel::classical: t1 = 4.0 * run.scales.t_cl; break;
    case Panel::revival: t1 = 1.2 * run.scales.t_r; break;
  }
  t0 = config.t_start.value_or(t0);
  t1 = config.t_end.value_or(t1);
  if (!(t0 >= 0.0) || !(t1 > t0)) {
    throw UsageError("time window must satisfy 0 <= t-start < t-end");
  }
  if (config.samples) {
    if (*config.samples < 2) throw UsageError("--samples must be >= 2");
    run.grid = {t0, t1, *config.samples};
  } else {
    run.grid = zbr::TimeGrid::with_max_step(t0, t1, run.scales.t_zb / default_samples_per_zb(run.panel));
  }
  return run;
}

}  // namespace zbrev
