// zbrev: Zitterbewegung revival simulator for the 2+1 D Dirac oscillator.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "zbrev/commands.hpp"
#include "zbrev/config.hpp"
#include "zbrevival/errors.hpp"

namespace {

struct FlagValues {
  std::string preset, panel, out_dir, config, calibration;
  double omega = 0, sigma = 0, t_start = 0, t_end = 0, light_speed = 0;
  int n0 = 0, n_max = 0, samples = 0, threads = 0;
  bool oracle = true;
};

void add_run_flags(CLI::App& cmd, FlagValues& f) {
  cmd.add_option("--preset", f.preset, "fig1 | fig2 | fig3 | fig4");
  cmd.add_option("--omega", f.omega, "oscillator frequency (a.u.)");
  cmd.add_option("--n0", f.n0, "packet centre quantum number");
  cmd.add_option("--sigma", f.sigma, "Gaussian width parameter");
  cmd.add_option("--nmax", f.n_max, "Fock cutoff of the packet (default: tail mass < 1e-12)");
  cmd.add_option("--light-speed", f.light_speed, "speed of light (a.u.)");
  cmd.add_option("--panel", f.panel, "zb [0,6 T_ZB] | classical [0,4 T_CL] | revival [0,1.2 T_R]");
  cmd.add_option("--t-start", f.t_start, "window start (a.u.)");
  cmd.add_option("--t-end", f.t_end, "window end (a.u.)");
  cmd.add_option("--samples", f.samples, "number of grid points");
  cmd.add_flag("--oracle,!--no-oracle", f.oracle, "evaluate the dense matrix oracle (default on)");
  cmd.add_option("--out-dir", f.out_dir, "output directory");
  cmd.add_option("--config", f.config, "flat JSON config; flags override it");
  cmd.add_option("--calibration", f.calibration, "calibration JSON supplying revival_threshold");
  cmd.add_option("--threads", f.threads, "sampling threads (0 = default)");
}

zbrev::RunConfig collect(const CLI::App& cmd, const FlagValues& f) {
  zbrev::RunConfig cfg;
  if (cmd.count("--config")) cfg = zbrev::RunConfig::from_file(f.config);
  zbrev::RunConfig flags;
  if (cmd.count("--preset")) flags.preset = zbrev::parse_preset(f.preset);
  if (cmd.count("--omega")) flags.omega = f.omega;
  if (cmd.count("--n0")) flags.n0 = f.n0;
  if (cmd.count("--sigma")) flags.sigma = f.sigma;
  if (cmd.count("--nmax")) flags.n_max = f.n_max;
  if (cmd.count("--light-speed")) flags.light_speed = f.light_speed;
  if (cmd.count("--panel")) flags.panel = zbrev::parse_panel(f.panel);
  if (cmd.count("--t-start")) flags.t_start = f.t_start;
  if (cmd.count("--t-end")) flags.t_end = f.t_end;
  if (cmd.count("--samples")) flags.samples = f.samples;
  if (cmd.count("--oracle") || cmd.count("--no-oracle")) flags.oracle = f.oracle;
  if (cmd.count("--out-dir")) flags.out_dir = f.out_dir;
  if (cmd.count("--calibration")) flags.calibration = f.calibration;
  if (cmd.count("--threads")) flags.threads = f.threads;
  cfg.overlay(flags);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zitterbewegung revivals of a bound Dirac particle (2+1 D Dirac oscillator)"};
  app.require_subcommand(1);

  FlagValues run_flags;
  auto* run_cmd = app.add_subcommand("run", "sample a trace (or the fig4 omega scan) and write CSV/JSON");
  add_run_flags(*run_cmd, run_flags);

  FlagValues verify_flags;
  auto* verify_cmd = app.add_subcommand("verify", "run the invariant suite and print pass/fail per check");
  add_run_flags(*verify_cmd, verify_flags);

  std::string calibration_out = "calibration.json";
  int calibration_threads = 0;
  auto* calibrate_cmd = app.add_subcommand("calibrate", "recompute the revival calibration from the oracle");
  calibrate_cmd->add_option("--out", calibration_out, "calibration file to write");
  calibrate_cmd->add_option("--threads", calibration_threads, "sampling threads (0 = default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : zbrev::kExitUsage;
  }

  try {
    if (*run_cmd) {
      const zbrev::ResolvedRun resolved = zbrev::resolve(collect(*run_cmd, run_flags));
      zbrev::run(resolved, std::cerr);
      return zbrev::kExitOk;
    }
    if (*verify_cmd) {
      const auto checks = zbrev::verify(collect(*verify_cmd, verify_flags));
      zbrev::print_checks(std::cout, checks);
      for (const auto& c : checks) {
        if (c.status == zbrev::CheckStatus::fail) return zbrev::kExitNumerical;
      }
      return zbrev::kExitOk;
    }
    if (*calibrate_cmd) {
      zbrev::calibrate(calibration_out, std::cerr, calibration_threads);
      return zbrev::kExitOk;
    }
  } catch (const zbrev::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return zbrev::kExitUsage;
  } catch (const zbr::NumericalError& e) {
    std::cerr << "numerical contract violation: " << e.what() << '\n';
    return zbrev::kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return zbrev::kExitUsage;
  }
  return zbrev::kExitUsage;
}
