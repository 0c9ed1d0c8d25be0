// Acceptance suite: one line per criterion (and per sub-criterion), tolerances
// pinned below. Exit status is non-zero when any line fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zbrevival/analysis.hpp"
#include "zbrevival/dynamics.hpp"
#include "zbrevival/spectrum.hpp"
#include "zbrevival/timescales.hpp"
#include "zbrevival/truncated_model.hpp"
#include "zbrevival/wavepacket.hpp"

namespace {

using namespace zbr;
using Clock = std::chrono::steady_clock;

constexpr double kOmega = 1e3;

// Caption regression
constexpr double kCaptionTolFig1 = 0.005;
constexpr double kCaptionTolFig2 = 0.01;
constexpr double kCaptionTolFig3 = 0.01;
constexpr double kFreeLimitZb = 1.67e-4;
constexpr double kFreeLimitTol = 0.005;
constexpr double kCaptionBudgetSeconds = 1.0;

// Spectral oracle
constexpr int kSpectralCutoff = 60;
constexpr double kSpectralTol = 1e-9;
constexpr double kSpectralBudgetSeconds = 5.0;

// Closed form vs oracle
constexpr double kProportionalityPeriods = 3.0;    // window [0, 3 T_CL]
constexpr double kProportionalityStepDivisor = 40.0;  // dt = T_ZB / 40
constexpr double kProportionalityTol = 1e-6;
constexpr double kProportionalityBudgetSeconds = 60.0;

// Revival dichotomy
constexpr double kRevivalWindow = 1.2;        // trace covers [0, 1.2 T_R]
constexpr double kRevivalStepDivisor = 20.0;  // dt = T_ZB / 20
constexpr int kFlatteningPeriods = 3;
constexpr double kFrozenRatioTol = 1e-6;

// Unitarity
constexpr double kAutocorrStartTol = 1e-12;
constexpr double kAutocorrBoundTol = 1e-10;
constexpr double kNormTol = 1e-12;
constexpr double kWeightTol = 1e-14;
constexpr double kOracleVyTol = 1e-10;

// Taylor consistency
constexpr double kTaylorTol = 1e-8;

int failures = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << ": " << detail << '\n';
  if (!ok) ++failures;
}

std::string fmt(double v, int digits = 6) {
  std::ostringstream s;
  s << std::setprecision(digits) << v;
  return s.str();
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

WavePacket preset_packet(const PhysicalParams& p, int n0, double sigma) {
  return build_packet({n0, sigma, recommend_cutoff(n0, sigma), {}}, p);
}

void caption_regression() {
  const auto start = Clock::now();
  const auto p = PhysicalParams::atomic(kOmega);
  struct Row {
    const char* fig;
    int n0;
    double zb, cl, r, tol;
  };
  for (const Row row : {Row{"fig1", 30, 6.15e-5, 8.54e-3, 1.19, kCaptionTolFig1},
                        Row{"fig2", 15, 8.16e-5, 6.4e-3, 0.5, kCaptionTolFig2},
                        Row{"fig3", 10, 9.46e-5, 5.55e-3, 0.33, kCaptionTolFig3}}) {
    const auto s = time_scales(p, row.n0);
    const auto line = [&](const char* label, double value, double caption) {
      const double rel = std::abs(value / caption - 1.0);
      report(rel <= row.tol, std::string("caption ") + row.fig + " " + label,
             fmt(value) + " vs " + fmt(caption) + ", rel " + fmt(rel, 4) + " (tol " + fmt(row.tol) + ")");
    };
    line("T_ZB", s.t_zb, row.zb);
    line("T_CL", s.t_cl, row.cl);
    line("T_R", s.t_r, row.r);
  }
  const double free_zb = zb_period(PhysicalParams::atomic(0.0), 30);
  const double rel = std::abs(free_zb / kFreeLimitZb - 1.0);
  report(rel <= kFreeLimitTol && free_zb > 1e-4 && free_zb < 1e-3, "caption free-limit T_ZB",
         fmt(free_zb) + " vs " + fmt(kFreeLimitZb) + " (order 1e-4)");
  const double elapsed = seconds_since(start);
  report(elapsed < kCaptionBudgetSeconds, "caption runtime", fmt(elapsed, 3) + " s");
}

void spectral_oracle() {
  const auto start = Clock::now();
  const auto p = PhysicalParams::atomic(kOmega);
  const auto model = build_truncated_model(p, kSpectralCutoff);
  const Eigen::VectorXd ev = sorted_eigenvalues(model);
  double worst = 0.0;
  for (int n = 0; n <= kSpectralCutoff - kTruncationGuardBand; ++n) {
    for (Branch b : {Branch::positive, Branch::negative}) {
      if (n == 0 && b == Branch::negative) continue;
      const double e = energy(p, n, b);
      worst = std::max(worst, (ev.array() - e).abs().minCoeff() / std::abs(e));
    }
  }
  const double elapsed = seconds_since(start);
  report(worst < kSpectralTol, "spectral oracle", "n_max = 60, n <= 58, max rel error " + fmt(worst, 3));
  report(elapsed < kSpectralBudgetSeconds, "spectral oracle runtime", fmt(elapsed, 3) + " s");
}

void proportionality() {
  const auto start = Clock::now();
  const auto p = PhysicalParams::atomic(kOmega);
  const auto packet = preset_packet(p, 30, 3.0);
  const auto model = build_truncated_model(p, packet.n_max() + kTruncationGuardBand);
  const auto s = time_scales(p, 30);
  const auto grid = TimeGrid::with_max_step(0.0, kProportionalityPeriods * s.t_cl,
                                            s.t_zb / kProportionalityStepDivisor);
  const Trace trace = sample_trace(packet, &model, grid, {.threads = 1});
  const double elapsed = seconds_since(start);
  const auto& fit = *trace.proportionality;
  report(fit.max_relative_spread < kProportionalityTol, "closed form vs oracle",
         "K = " + fmt(fit.constant, 10) + ", spread " + fmt(fit.max_relative_spread, 3) + " over " +
             std::to_string(fit.samples_used) + " samples");
  report(elapsed < kProportionalityBudgetSeconds, "closed form vs oracle runtime",
         fmt(elapsed, 3) + " s single-threaded");
}

struct RevivalRun {
  RevivalReport report;
  QuasiclassicalDecay decay;
};

RevivalRun revival_run(int n0, double sigma, double threshold) {
  const auto p = PhysicalParams::atomic(kOmega);
  const auto packet = preset_packet(p, n0, sigma);
  const auto model = build_truncated_model(p, packet.n_max() + kTruncationGuardBand);
  const auto s = time_scales(p, n0);
  const auto grid = TimeGrid::with_max_step(0.0, kRevivalWindow * s.t_r, s.t_zb / kRevivalStepDivisor);
  const Trace trace = sample_trace(packet, &model, grid, {});
  const auto env = zb_envelope(grid.times(), *trace.v_x_oracle, s.t_zb);
  return {detect_revivals(env, {.t_r = s.t_r, .t_cl = s.t_cl, .m_max = 2, .threshold = threshold}),
          quasiclassical_decay(env, s.t_cl, kFlatteningPeriods + 1)};
}

void revival_dichotomy() {
  std::ifstream in(ZBR_CALIBRATION_FILE);
  if (!in) {
    report(false, "revival dichotomy", std::string("cannot read ") + ZBR_CALIBRATION_FILE);
    return;
  }
  const auto cal = nlohmann::json::parse(in);
  const double threshold = cal.at("revival_threshold").get<double>();

  const auto frozen_match = [&](const char* preset, const RevivalReport& r) {
    const auto& ratios = cal.at("presets").at(preset).at("ratios");
    double worst = 0.0;
    for (std::size_t i = 0; i < r.revivals.size(); ++i) {
      worst = std::max(worst, std::abs(r.revivals[i].ratio - ratios.at(i).get<double>()));
    }
    return worst;
  };

  const RevivalRun fig1 = revival_run(30, 3.0, threshold);
  for (const auto& e : fig1.report.revivals) {
    const double offset = std::abs(e.detected_t / e.expected_t - 1.0);
    report(e.matched && offset <= kDefaultRevivalSearchFraction, "revival fig1 m=" + std::to_string(e.m),
           "t = " + fmt(e.detected_t) + " (expected " + fmt(e.expected_t) + "), ratio " + fmt(e.ratio) +
               " vs threshold " + fmt(threshold));
  }
  const double drift1 = frozen_match("fig1", fig1.report);
  report(drift1 < kFrozenRatioTol, "revival fig1 frozen ratios", "max deviation " + fmt(drift1, 3));

  const RevivalRun fig3 = revival_run(10, 20.0, threshold);
  const bool none = std::none_of(fig3.report.revivals.begin(), fig3.report.revivals.end(),
                                 [](const RevivalEntry& e) { return e.matched; });
  report(none, "revival fig3 no match m<=2",
         "ratios " + fmt(fig3.report.revivals[0].ratio) + ", " + fmt(fig3.report.revivals[1].ratio) +
             " vs threshold " + fmt(threshold));
  const bool flattens = fig3.decay.flattening_period && *fig3.decay.flattening_period <= kFlatteningPeriods;
  std::string peaks;
  for (double v : fig3.decay.period_peaks) peaks += (peaks.empty() ? "" : ", ") + fmt(v / fig3.report.initial_amplitude, 4);
  report(flattens, "revival fig3 flattens within 3 periods", "relative period peaks " + peaks);
  const double drift3 = frozen_match("fig3", fig3.report);
  report(drift3 < kFrozenRatioTol, "revival fig3 frozen ratios", "max deviation " + fmt(drift3, 3));
}

void unitarity() {
  const auto p = PhysicalParams::atomic(kOmega);
  struct Preset {
    int n0;
    double sigma;
  };
  double start_err = 0.0, bound_excess = 0.0, norm_err = 0.0, vy_closed = 0.0, vy_oracle = 0.0;
  for (const Preset pre : {Preset{30, 3.0}, Preset{15, 3.0}, Preset{10, 20.0}}) {
    const auto packet = preset_packet(p, pre.n0, pre.sigma);
    norm_err = std::max(norm_err, std::abs(packet.norm_squared() - 1.0));
    start_err = std::max(start_err, std::abs(std::abs(autocorrelation(packet, 0.0)) - 1.0));
    const auto s = time_scales(p, pre.n0);
    const auto model = build_truncated_model(p, packet.n_max() + kTruncationGuardBand);
    const VelocityOracle oracle(packet, model);
    const auto grid = TimeGrid::with_max_step(0.0, 1.2 * s.t_r, s.t_cl / 7.0);
    for (double t : grid.times()) {
      bound_excess = std::max(bound_excess, std::abs(autocorrelation(packet, t)) - 1.0);
      vy_closed = std::max(vy_closed, std::abs(velocity_y(packet, t)));
    }
    const auto fine = TimeGrid::with_max_step(0.0, s.t_cl, s.t_zb / 20.0);
    for (double t : fine.times()) vy_oracle = std::max(vy_oracle, std::abs(oracle.velocity_y(t)));
  }
  double weight_err = 0.0;
  for (int n = 0; n <= 10000; ++n) {
    const auto w = spinor_weights(p, n);
    weight_err = std::max(weight_err, std::abs(w.gamma * w.gamma + w.delta * w.delta - 1.0));
  }
  report(start_err <= kAutocorrStartTol, "unitarity |A(0)| = 1", "max error " + fmt(start_err, 3));
  report(bound_excess <= kAutocorrBoundTol, "unitarity |A(t)| <= 1", "max excess " + fmt(bound_excess, 3));
  report(norm_err <= kNormTol, "unitarity packet norm", "max error " + fmt(norm_err, 3));
  report(weight_err <= kWeightTol, "unitarity gamma^2 + delta^2 = 1", "max error " + fmt(weight_err, 3));
  report(vy_closed == 0.0, "unitarity closed-form <v_y> = 0", "max |<v_y>| " + fmt(vy_closed, 3));
  report(vy_oracle < kOracleVyTol, "unitarity oracle <v_y> = 0", "max |<v_y>| " + fmt(vy_oracle) + " a.u.");
}

void ordering_scan() {
  const auto rows = omega_scan(PhysicalParams{}, 30, default_scan_omegas());
  int bad = 0;
  for (const auto& r : rows) {
    if (!(r.scales.t_r > r.scales.t_cl && r.scales.t_cl > r.scales.t_zb)) ++bad;
  }
  report(rows.size() == 50 && bad == 0, "ordering scan",
         std::to_string(rows.size()) + " rows over omega in [1e2, 1e4], " + std::to_string(bad) + " violations");
}

void taylor_consistency() {
  double worst = 0.0;
  for (int n0 : {10, 15, 30}) {
    for (double w : log_spaced(1e2, 1e4, 9)) {
      const auto r = derivative_consistency_check(PhysicalParams::atomic(w), n0);
      worst = std::max({worst, r.classical_rel_error, r.revival_rel_error});
    }
  }
  report(worst < kTaylorTol, "taylor consistency", "max rel error " + fmt(worst, 3));
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void()>>> criteria{
      {"caption-value regression", caption_regression},
      {"spectral oracle", spectral_oracle},
      {"closed form vs oracle", proportionality},
      {"revival dichotomy", revival_dichotomy},
      {"unitarity/normalization", unitarity},
      {"ordering scan", ordering_scan},
      {"taylor consistency", taylor_consistency}};
  for (const auto& [name, body] : criteria) {
    try {
      body();
    } catch (const std::exception& e) {
      report(false, name, std::string("exception: ") + e.what());
    }
  }
  std::cout << (failures == 0 ? "all acceptance criteria pass" : std::to_string(failures) + " acceptance line(s) failed")
            << '\n';
  return failures == 0 ? 0 : 1;
}
