#include "zbrev/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "zbrevival/analysis.hpp"
#include "zbrevival/errors.hpp"
#include "zbrevival/io.hpp"
#include "zbrevival/spectrum.hpp"
#include "zbrevival/truncated_model.hpp"

namespace zbrev {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write " + path.string());
  return out;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw UsageError("cannot create output directory " + dir.string());
  }
}

std::string format_value(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

json metadata_base(const ResolvedRun& r) {
  return {{"params", zbr::to_json(r.params)},
          {"packet", {{"n0", r.packet.n0}, {"sigma", r.packet.sigma}, {"n_max", r.packet.n_max}}},
          {"time_scales", zbr::to_json(r.scales)}};
}

}  // namespace

RunOutputs run(const ResolvedRun& r, std::ostream& log) {
  ensure_dir(r.out_dir);
  RunOutputs outputs;
  json meta = metadata_base(r);

  if (r.scan_only) {
    const auto rows = zbr::omega_scan(r.params, r.packet.n0, zbr::default_scan_omegas());
    const fs::path scan_path = r.out_dir / "scan.csv";
    auto out = open_output(scan_path);
    zbr::write_scan_csv(out, rows);
    outputs.files.push_back(scan_path);
    meta["scan"] = {{"n0", r.packet.n0},
                    {"omega_min", rows.front().omega},
                    {"omega_max", rows.back().omega},
                    {"rows", rows.size()}};
    log << "wrote " << scan_path.string() << " (" << rows.size() << " rows)\n";
  } else {
    const zbr::WavePacket packet = zbr::build_packet(r.packet, r.params);
    std::optional<zbr::TruncatedModel> model;
    if (r.oracle) model = zbr::build_truncated_model(r.params, r.oracle_n_max);
    const zbr::Trace trace =
        zbr::sample_trace(packet, model ? &*model : nullptr, r.grid, {.threads = r.threads});

    const fs::path trace_path = r.out_dir / "trace.csv";
    {
      auto out = open_output(trace_path);
      zbr::write_trace_csv(out, trace);
    }
    outputs.files.push_back(trace_path);
    log << "wrote " << trace_path.string() << " (" << r.grid.n_samples << " samples)\n";

    meta["panel"] = std::string(to_string(r.panel));
    meta["grid"] = zbr::to_json(r.grid);
    meta["oracle"] = r.oracle;
    meta["oracle_n_max"] = r.oracle ? json(r.oracle_n_max) : json(nullptr);
    if (trace.proportionality) {
      meta["proportionality"] = {{"K", trace.proportionality->constant},
                                 {"max_relative_spread", trace.proportionality->max_relative_spread},
                                 {"samples_used", trace.proportionality->samples_used}};
    } else {
      meta["proportionality"] = nullptr;
    }

    const double dt = r.grid.step();
    const int m_max = static_cast<int>(std::floor(2.0 * (r.grid.t_end - r.grid.t_start) / r.scales.t_r));
    // The revival panel always analyses (and so reports a too-coarse grid);
    // other windows only when they happen to cover T_R/2 at ZB resolution.
    const bool resolved_zb = dt <= r.scales.t_zb / zbr::kMinSamplesPerZbPeriod;
    if (r.panel == Panel::revival || (resolved_zb && m_max >= 1)) {
      const zbr::Envelope env = zbr::zb_envelope(trace, r.scales.t_zb);
      const zbr::RevivalReport report = zbr::detect_revivals(
          env, {.t_r = r.scales.t_r, .t_cl = r.scales.t_cl, .m_max = std::max(m_max, 1),
                .threshold = r.revival_threshold});
      const fs::path rev_path = r.out_dir / "revival.json";
      auto out = open_output(rev_path);
      out << zbr::to_json(report).dump(2) << '\n';
      outputs.files.push_back(rev_path);
      log << "wrote " << rev_path.string() << '\n';
    }
  }

  json files = json::array();
  for (const auto& f : outputs.files) files.push_back(f.filename().string());
  meta["files"] = files;
  const fs::path meta_path = r.out_dir / "metadata.json";
  {
    auto out = open_output(meta_path);
    out << meta.dump(2) << '\n';
  }
  outputs.files.push_back(meta_path);
  log << "T_ZB = " << format_value(r.scales.t_zb) << "  T_CL = " << format_value(r.scales.t_cl)
      << "  T_R = " << format_value(r.scales.t_r) << " a.u.\n";
  return outputs;
}

namespace {

struct Verifier {
  std::vector<CheckResult> results;

  void record(std::string name, bool ok, std::string detail) {
    results.push_back({std::move(name), ok ? CheckStatus::pass : CheckStatus::fail, std::move(detail)});
  }
  void skip(std::string name, std::string why) {
    results.push_back({std::move(name), CheckStatus::skip, std::move(why)});
  }

  // Runs body, converting numerical exceptions into a failed check.
  template <typename F>
  void guarded(const std::string& name, F&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      record(name, false, std::string("threw: ") + e.what());
    }
  }
};

void check_captions(Verifier& v, const zbr::PhysicalParams& base) {
  struct Caption {
    int n0;
    double t_zb, t_cl, t_r, tol;
  };
  const Caption captions[] = {{30, 6.15e-5, 8.54e-3, 1.19, 0.005},
                              {15, 8.16e-5, 6.4e-3, 0.5, 0.01},
                              {10, 9.46e-5, 5.55e-3, 0.33, 0.01}};
  zbr::PhysicalParams p = base;
  p.omega = 1e3;
  for (const Caption& c : captions) {
    const zbr::TimeScales s = zbr::time_scales(p, c.n0);
    const auto one = [&](const char* label, double got, double want) {
      const double rel = std::abs(got / want - 1.0);
      v.record("caption n0=" + std::to_string(c.n0) + " " + label, rel <= c.tol,
               format_value(got) + " vs " + format_value(want) + " (rel " + format_value(rel) +
                   ", tol " + format_value(c.tol) + ")");
    };
    one("T_ZB", s.t_zb, c.t_zb);
    one("T_CL", s.t_cl, c.t_cl);
    one("T_R", s.t_r, c.t_r);
  }
  zbr::PhysicalParams free = base;
  free.omega = 0.0;
  const double t0 = zbr::zb_period(free, 30);
  const double rel = std::abs(t0 / 1.67e-4 - 1.0);
  v.record("free-limit T_ZB", rel <= 0.005, format_value(t0) + " vs 1.67e-4");
}

}  // namespace

std::vector<CheckResult> verify(const RunConfig& config) {
  Verifier v;
  zbr::PhysicalParams base;
  base.light_speed = config.light_speed.value_or(zbr::kLightSpeedAu);
  const bool oracle = config.oracle.value_or(true);
  const int threads = config.threads.value_or(0);

  v.guarded("caption regression", [&] { check_captions(v, base); });

  v.guarded("ordering scan", [&] {
    const auto rows = zbr::omega_scan(base, 30, zbr::default_scan_omegas());
    const bool ok = std::all_of(rows.begin(), rows.end(), [](const zbr::ScanRow& r) {
      return r.scales.t_r > r.scales.t_cl && r.scales.t_cl > r.scales.t_zb;
    });
    v.record("ordering scan", ok, std::to_string(rows.size()) + " rows, n0 = 30");
  });

  v.guarded("taylor consistency", [&] {
    zbr::PhysicalParams p = base;
    p.omega = 1e3;
    const auto d = zbr::derivative_consistency_check(p, 30);
    const double worst = std::max(d.classical_rel_error, d.revival_rel_error);
    v.record("taylor consistency", worst < 1e-8, "max rel error " + format_value(worst));
  });

  zbr::PhysicalParams fig = base;
  fig.omega = 1e3;
  const zbr::PacketSpec fig1{30, 3.0, zbr::recommend_cutoff(30, 3.0), {}};
  const zbr::PacketSpec fig3{10, 20.0, zbr::recommend_cutoff(10, 20.0), {}};

  v.guarded("unitarity", [&] {
    const auto packet = zbr::build_packet(fig1, fig);
    const auto s = zbr::time_scales(fig, fig1.n0);
    double worst_abs = 0.0;
    const auto grid = zbr::TimeGrid::with_max_step(0.0, 1.2 * s.t_r, s.t_cl / 7.0);
    for (int i = 0; i < grid.n_samples; ++i) {
      worst_abs = std::max(worst_abs, std::abs(zbr::autocorrelation(packet, grid.time(i))));
    }
    double worst_weight = 0.0;
    for (int n = 0; n <= 10000; ++n) {
      const auto w = zbr::spinor_weights(fig, n);
      worst_weight = std::max(worst_weight, std::abs(w.gamma * w.gamma + w.delta * w.delta - 1.0));
    }
    const bool ok = std::abs(std::abs(zbr::autocorrelation(packet, 0.0)) - 1.0) <= 1e-12 &&
                    worst_abs <= 1.0 + 1e-10 && std::abs(packet.norm_squared() - 1.0) <= 1e-12 &&
                    worst_weight <= 1e-14 && zbr::velocity_y(packet, 0.3) == 0.0;
    v.record("unitarity", ok,
             "max|A| = " + format_value(worst_abs) + ", max|g^2+d^2-1| = " + format_value(worst_weight));
  });

  if (!oracle) {
    v.skip("spectral oracle", "oracle disabled");
    v.skip("velocity proportionality", "oracle disabled");
    v.skip("oracle v_y", "oracle disabled");
  } else {
    v.guarded("spectral oracle", [&] {
      const auto model = zbr::build_truncated_model(fig, 60);
      const Eigen::VectorXd ev = zbr::sorted_eigenvalues(model);
      double worst = 0.0;
      for (int n = 0; n <= 60 - zbr::kTruncationGuardBand; ++n) {
        for (zbr::Branch b : {zbr::Branch::positive, zbr::Branch::negative}) {
          if (n == 0 && b == zbr::Branch::negative) continue;
          const double e = zbr::energy(fig, n, b);
          const double nearest = (ev.array() - e).abs().minCoeff();
          worst = std::max(worst, nearest / std::abs(e));
        }
      }
      v.record("spectral oracle", worst < 1e-9, "max rel error " + format_value(worst));
    });

    v.guarded("velocity proportionality", [&] {
      const auto packet = zbr::build_packet(fig1, fig);
      const auto model = zbr::build_truncated_model(fig, fig1.n_max + zbr::kTruncationGuardBand);
      const auto s = zbr::time_scales(fig, fig1.n0);
      const auto grid = zbr::TimeGrid::with_max_step(0.0, 3.0 * s.t_cl, s.t_zb / 40.0);
      const auto trace = zbr::sample_trace(packet, &model, grid, {.threads = threads});
      const auto& fit = *trace.proportionality;
      v.record("velocity proportionality", fit.max_relative_spread < 1e-6,
               "K = " + format_value(fit.constant) + ", spread " + format_value(fit.max_relative_spread));
    });

    v.guarded("oracle v_y", [&] {
      const auto packet = zbr::build_packet(fig1, fig);
      const auto model = zbr::build_truncated_model(fig, fig1.n_max + zbr::kTruncationGuardBand);
      const zbr::VelocityOracle o(packet, model);
      const auto s = zbr::time_scales(fig, fig1.n0);
      double worst = 0.0;
      for (int i = 0; i <= 400; ++i) worst = std::max(worst, std::abs(o.velocity_y(i * s.t_cl / 100.0).real()));
      v.record("oracle v_y", worst < 1e-10, "max |<v_y>| = " + format_value(worst) + " a.u.");
    });
  }

  v.guarded("revival dichotomy", [&] {
    const double threshold = config.calibration ? load_revival_threshold(*config.calibration)
                                                : zbr::kDefaultRevivalThreshold;
    const auto analyse = [&](const zbr::PacketSpec& spec) {
      const auto packet = zbr::build_packet(spec, fig);
      const auto s = zbr::time_scales(fig, spec.n0);
      const auto grid = zbr::TimeGrid::with_max_step(0.0, 1.2 * s.t_r, s.t_zb / zbr::kMinSamplesPerZbPeriod);
      const auto trace = zbr::sample_trace(packet, nullptr, grid, {.threads = threads});
      const auto env = zbr::zb_envelope(trace, s.t_zb);
      return std::pair{zbr::detect_revivals(env, {.t_r = s.t_r, .t_cl = s.t_cl, .m_max = 2, .threshold = threshold}),
                       zbr::quasiclassical_decay(env, s.t_cl, 4)};
    };
    const auto [rev1, decay1] = analyse(fig1);
    const auto [rev3, decay3] = analyse(fig3);
    const bool fig1_ok = std::all_of(rev1.revivals.begin(), rev1.revivals.end(),
                                     [](const zbr::RevivalEntry& e) { return e.matched; }) &&
                         decay1.strictly_decreasing;
    const bool fig3_ok = std::none_of(rev3.revivals.begin(), rev3.revivals.end(),
                                      [](const zbr::RevivalEntry& e) { return e.matched; }) &&
                         decay3.flattening_period && *decay3.flattening_period <= 3;
    v.record("revival dichotomy", fig1_ok && fig3_ok,
             "fig1 ratios " + format_value(rev1.revivals[0].ratio) + ", " +
                 format_value(rev1.revivals[1].ratio) + "; fig3 ratios " +
                 format_value(rev3.revivals[0].ratio) + ", " + format_value(rev3.revivals[1].ratio) +
                 " (threshold " + format_value(threshold) + ")");
  });

  return v.results;
}

void print_checks(std::ostream& out, const std::vector<CheckResult>& checks) {
  for (const CheckResult& c : checks) {
    const char* tag = c.status == CheckStatus::pass ? "PASS" : c.status == CheckStatus::fail ? "FAIL" : "SKIP";
    out << '[' << tag << "] " << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << '\n';
  }
}

void calibrate(const fs::path& output, std::ostream& log, int threads) {
  struct Row {
    const char* name;
    zbr::PacketSpec spec;
  };
  const Row rows[] = {{"fig1", {30, 3.0, zbr::recommend_cutoff(30, 3.0), {}}},
                      {"fig2", {15, 3.0, zbr::recommend_cutoff(15, 3.0), {}}},
                      {"fig3", {10, 20.0, zbr::recommend_cutoff(10, 20.0), {}}}};
  const zbr::PhysicalParams params = zbr::PhysicalParams::atomic(1e3);

  json presets = json::object();
  double fig1_min_ratio = 0.0;
  for (const Row& row : rows) {
    const auto packet = zbr::build_packet(row.spec, params);
    const auto model = zbr::build_truncated_model(params, row.spec.n_max + zbr::kTruncationGuardBand);
    const auto s = zbr::time_scales(params, row.spec.n0);
    const auto grid = zbr::TimeGrid::with_max_step(0.0, 1.2 * s.t_r, s.t_zb / zbr::kMinSamplesPerZbPeriod);
    const auto trace = zbr::sample_trace(packet, &model, grid, {.threads = threads});
    const auto env = zbr::zb_envelope(grid.times(), *trace.v_x_oracle, s.t_zb);
    // Threshold 0 so every candidate is reported; classification happens downstream.
    const auto report = zbr::detect_revivals(env, {.t_r = s.t_r, .t_cl = s.t_cl, .m_max = 2, .threshold = 0.0});
    const auto decay = zbr::quasiclassical_decay(env, s.t_cl, 6);

    json ratios = json::array();
    json times = json::array();
    for (const auto& e : report.revivals) {
      ratios.push_back(e.ratio);
      times.push_back(e.detected_t);
    }
    json peaks = json::array();
    for (double p : decay.period_peaks) peaks.push_back(p / report.initial_amplitude);
    presets[row.name] = {{"n0", row.spec.n0},
                         {"sigma", row.spec.sigma},
                         {"n_max", row.spec.n_max},
                         {"ratios", ratios},
                         {"detected_t", times},
                         {"period_peaks_relative", peaks},
                         {"K", trace.proportionality->constant}};
    if (std::string_view(row.name) == "fig1") {
      fig1_min_ratio = std::min(report.revivals[0].ratio, report.revivals[1].ratio);
    }
    log << row.name << ": ratios " << report.revivals[0].ratio << ", " << report.revivals[1].ratio
        << '\n';
  }

  // Threshold: 90% of the weakest fig1 recovery, rounded down to a multiple of 0.05.
  const double threshold = std::floor(0.9 * fig1_min_ratio * 20.0) / 20.0;
  const json doc = {
      {"revival_threshold", threshold},
      {"search_fraction", zbr::kDefaultRevivalSearchFraction},
      {"threshold_rule", "floor_to_0.05(0.9 * min(fig1 ratios))"},
      {"source", "matrix oracle <v_x>, dt = T_ZB/20 over [0, 1.2 T_R], omega = 1e3"},
      {"light_speed", params.light_speed},
      {"presets", presets}};
  std::ofstream out(output);
  if (!out) throw UsageError("cannot write " + output.string());
  out << doc.dump(2) << '\n';
  log << "threshold " << threshold << " written to " << output.string() << '\n';
}

}  // namespace zbrev
