#include "zbrevival/timescales.hpp"

#include <cmath>
#include <stdexcept>

#include "zbrevival/errors.hpp"
#include "zbrevival/spectrum.hpp"

namespace zbr {

namespace {

void require_bound(const PhysicalParams& params, const char* what) {
  params.validate();
  if (params.omega == 0.0) {
    throw DivergenceError(std::string(what) + " diverges for a free particle (omega = 0)");
  }
}

void require_n0(int n0) {
  if (n0 < 0) throw std::invalid_argument("n0 must be non-negative");
}

}  // namespace

double classical_period(const PhysicalParams& params, int n0) {
  require_bound(params, "classical period");
  require_n0(n0);
  return M_PI / params.omega * std::sqrt(spectrum_radicand(params, n0));
}

double revival_time(const PhysicalParams& params, int n0) {
  require_bound(params, "revival time");
  require_n0(n0);
  const double r = spectrum_radicand(params, n0);
  return M_PI * params.rest_energy() / (params.hbar * params.omega * params.omega) * r *
         std::sqrt(r);
}

double zb_period(const PhysicalParams& params, int n0) {
  params.validate();
  require_n0(n0);
  return M_PI * params.hbar / energy(params, n0, Branch::positive);
}

TimeScales time_scales(const PhysicalParams& params, int n0) {
  return {zb_period(params, n0), classical_period(params, n0), revival_time(params, n0)};
}

DerivativeReport derivative_consistency_check(const PhysicalParams& params, int n0) {
  require_bound(params, "derivative check");
  if (n0 < 1) throw std::invalid_argument("derivative check needs n0 >= 1");

  DerivativeReport r;
  const double hbar = params.hbar;
  r.first_analytic = energy_first_derivative(params, n0);
  r.second_analytic = energy_second_derivative(params, n0);

  const double em = energy(params, n0 - 1, Branch::positive);
  const double e0 = energy(params, n0, Branch::positive);
  const double ep = energy(params, n0 + 1, Branch::positive);
  r.first_central_difference = 0.5 * (ep - em);
  r.second_central_difference = (ep - e0) - (e0 - em);

  r.classical_from_derivative = 2.0 * M_PI * hbar / std::abs(r.first_analytic);
  r.revival_from_derivative = 2.0 * M_PI * hbar / (std::abs(r.second_analytic) / 2.0);

  const double t_cl = classical_period(params, n0);
  const double t_r = revival_time(params, n0);
  r.classical_rel_error = std::abs(r.classical_from_derivative / t_cl - 1.0);
  r.revival_rel_error = std::abs(r.revival_from_derivative / t_r - 1.0);
  r.first_fd_rel_error = std::abs(r.first_central_difference / r.first_analytic - 1.0);
  r.second_fd_rel_error = std::abs(r.second_central_difference / r.second_analytic - 1.0);

  const double ratio = params.rest_energy() / (hbar * params.omega) * spectrum_radicand(params, n0);
  r.ratio_identity_rel_error = std::abs((t_r / t_cl) / ratio - 1.0);
  return r;
}

std::vector<ScanRow> omega_scan(const PhysicalParams& base, int n0, std::span<const double> omegas) {
  std::vector<ScanRow> rows;
  rows.reserve(omegas.size());
  for (double w : omegas) {
    if (!(w > 0.0)) throw std::invalid_argument("omega scan values must be strictly positive");
    PhysicalParams p = base;
    p.omega = w;
    rows.push_back({w, time_scales(p, n0)});
  }
  return rows;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) {
    throw std::invalid_argument("log_spaced: need 0 < lo < hi and count >= 2");
  }
  std::vector<double> out(static_cast<std::size_t>(count));
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (int i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = std::pow(10.0, a + (b - a) * i / (count - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> default_scan_omegas() { return log_spaced(1e2, 1e4, 50); }

}  // namespace zbr
