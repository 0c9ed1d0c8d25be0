#include "zbrevival/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "zbrevival/errors.hpp"
#include "zbrevival/spectrum.hpp"

namespace zbr {

void TimeGrid::validate() const {
  if (!(t_start >= 0.0) || !(t_end > t_start) || !std::isfinite(t_end)) {
    throw std::invalid_argument("TimeGrid: require 0 <= t_start < t_end");
  }
  if (n_samples < 2) throw std::invalid_argument("TimeGrid: need at least two samples");
}

TimeGrid TimeGrid::with_max_step(double t_start, double t_end, double max_step) {
  if (!(max_step > 0.0)) throw std::invalid_argument("TimeGrid: step must be positive");
  const double intervals = std::ceil((t_end - t_start) / max_step);
  if (!(intervals < 1e9)) throw SizeError("TimeGrid: too many samples requested");
  TimeGrid grid{t_start, t_end, static_cast<int>(std::max(1.0, intervals)) + 1};
  grid.validate();
  return grid;
}

std::vector<double> TimeGrid::times() const {
  std::vector<double> t(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) t[static_cast<std::size_t>(i)] = time(i);
  return t;
}

VelocitySeries::VelocitySeries(const WavePacket& packet) {
  if (!packet.mix().is_equal_real()) {
    throw ContractError("velocity series holds only for the equal real branch mix (1/sqrt2, 1/sqrt2)");
  }
  const PhysicalParams& p = packet.params();
  const int n_max = packet.n_max();
  terms_.reserve(static_cast<std::size_t>(n_max));
  for (int n = 0; n < n_max; ++n) {
    const double cn = M_SQRT2 * packet.amplitude(n, Branch::positive).real();
    const double cn1 = M_SQRT2 * packet.amplitude(n + 1, Branch::positive).real();
    const double pair = 2.0 * cn * cn1;
    if (pair == 0.0) continue;
    const auto [g0, d0] = spinor_weights(p, n);
    const auto [g1, d1] = spinor_weights(p, n + 1);
    const double e0 = energy(p, n, Branch::positive);
    const double e1 = energy(p, n + 1, Branch::positive);
    terms_.push_back({pair * (g0 * g1 - d0 * d1), pair * (g1 * d0 - g0 * d1), (e0 + e1) / p.hbar,
                      (e0 - e1) / p.hbar, pair * (g0 * g1 + d0 * d1), pair * (g0 * d1 + d0 * g1)});
  }
}

double VelocitySeries::velocity_x(double t) const {
  double v = 0.0;
  for (const Term& term : terms_) {
    v += term.zb_weight * std::cos(term.zb_freq * t) - term.slow_weight * std::cos(term.slow_freq * t);
  }
  return v;
}

double VelocitySeries::velocity_y(double t) const {
  double v = 0.0;
  for (const Term& term : terms_) {
    // slow_freq is (E_n - E_{n+1})/hbar, hence the sign flip on the first sine
    v += -term.y_slow_weight * std::sin(term.slow_freq * t) - term.y_zb_weight * std::sin(term.zb_freq * t);
  }
  return v;
}

double velocity_x_closed(const WavePacket& packet, double t) {
  return VelocitySeries(packet).velocity_x(t);
}

double velocity_y(const WavePacket&, double) { return 0.0; }

double velocity_y_series(const WavePacket& packet, double t) {
  return VelocitySeries(packet).velocity_y(t);
}

cdouble autocorrelation(std::span<const double> weights, std::span<const double> energies,
                        double hbar, double t) {
  if (weights.size() != energies.size()) {
    throw std::invalid_argument("autocorrelation: weights and energies differ in length");
  }
  cdouble sum{};
  for (std::size_t k = 0; k < weights.size(); ++k) {
    sum += weights[k] * std::polar(1.0, energies[k] * t / hbar);
  }
  return sum;
}

namespace {

struct Populations {
  std::vector<double> weights;
  std::vector<double> energies;
};

Populations populations(const WavePacket& packet) {
  Populations out;
  const PhysicalParams& p = packet.params();
  for (int n = 0; n <= packet.n_max(); ++n) {
    for (Branch b : {Branch::positive, Branch::negative}) {
      if (n == 0 && b == Branch::negative) continue;
      const double w = std::norm(packet.amplitude(n, b));
      if (w == 0.0) continue;
      out.weights.push_back(w);
      out.energies.push_back(energy(p, n, b));
    }
  }
  return out;
}

}  // namespace

cdouble autocorrelation(const WavePacket& packet, double t) {
  const Populations pop = populations(packet);
  return autocorrelation(pop.weights, pop.energies, packet.params().hbar, t);
}

WavePacket evolve_state(const WavePacket& packet, double t) {
  const PhysicalParams& p = packet.params();
  std::vector<cdouble> pos(packet.amplitudes(Branch::positive).begin(),
                           packet.amplitudes(Branch::positive).end());
  std::vector<cdouble> neg(packet.amplitudes(Branch::negative).begin(),
                           packet.amplitudes(Branch::negative).end());
  for (int n = 0; n <= packet.n_max(); ++n) {
    const auto i = static_cast<std::size_t>(n);
    pos[i] *= std::polar(1.0, energy(p, n, Branch::positive) * t / p.hbar);
    if (n > 0) neg[i] *= std::polar(1.0, energy(p, n, Branch::negative) * t / p.hbar);
  }
  return WavePacket(p, pos, neg, packet.mix());
}

cdouble overlap(const WavePacket& a, const WavePacket& b) {
  const int n_max = std::max(a.n_max(), b.n_max());
  cdouble sum{};
  for (int n = 0; n <= n_max; ++n) {
    for (Branch br : {Branch::positive, Branch::negative}) {
      sum += std::conj(a.amplitude(n, br)) * b.amplitude(n, br);
    }
  }
  return sum;
}

VelocityOracle::VelocityOracle(const WavePacket& packet, const TruncatedModel& model)
    : model_(&model) {
  if (model.n_max < packet.n_max() + kTruncationGuardBand) {
    throw ContractError("oracle cutoff " + std::to_string(model.n_max) +
                        " must be at least packet cutoff + " +
                        std::to_string(kTruncationGuardBand) + " (" +
                        std::to_string(packet.n_max() + kTruncationGuardBand) + ")");
  }
  const PhysicalParams& p = packet.params();
  const PhysicalParams& q = model.params;
  if (p.mass != q.mass || p.light_speed != q.light_speed || p.hbar != q.hbar || p.omega != q.omega) {
    throw ContractError("oracle model and packet use different physical constants");
  }

  std::vector<std::pair<int, Branch>> states;
  for (int n = 0; n <= packet.n_max(); ++n) {
    for (Branch b : {Branch::positive, Branch::negative}) {
      if (n == 0 && b == Branch::negative) continue;
      if (packet.amplitude(n, b) != cdouble{}) states.emplace_back(n, b);
    }
  }
  const auto count = static_cast<Eigen::Index>(states.size());
  basis_.resize(model.dimension(), count);
  amplitudes_.resize(count);
  frequencies_.resize(count);
  for (Eigen::Index k = 0; k < count; ++k) {
    const auto [n, b] = states[static_cast<std::size_t>(k)];
    basis_.col(k) = embed_eigenspinor(model, n, b);
    amplitudes_(k) = packet.amplitude(n, b);
    frequencies_(k) = energy(p, n, b) / p.hbar;
  }
}

Eigen::VectorXcd VelocityOracle::state(double t) const {
  Eigen::VectorXcd coeff(amplitudes_.size());
  for (Eigen::Index k = 0; k < coeff.size(); ++k) {
    coeff(k) = amplitudes_(k) * std::polar(1.0, frequencies_(k) * t);
  }
  return basis_.cast<cdouble>() * coeff;
}

double VelocityOracle::velocity_x(double t) const {
  Eigen::VectorXd re(amplitudes_.size());
  Eigen::VectorXd im(amplitudes_.size());
  for (Eigen::Index k = 0; k < re.size(); ++k) {
    const cdouble c = amplitudes_(k) * std::polar(1.0, frequencies_(k) * t);
    re(k) = c.real();
    im(k) = c.imag();
  }
  // v_x is real symmetric, so <psi|v|psi> = a^T v a + b^T v b for psi = a + i b.
  const Eigen::VectorXd a = basis_ * re;
  const Eigen::VectorXd b = basis_ * im;
  return a.dot(model_->velocity_x * a) + b.dot(model_->velocity_x * b);
}

cdouble VelocityOracle::velocity_y(double t) const {
  const Eigen::VectorXcd psi = state(t);
  return psi.dot(model_->velocity_y * psi);  // Eigen's dot conjugates the first argument
}

double expectation_velocity_oracle(const WavePacket& packet, const TruncatedModel& model, double t) {
  return VelocityOracle(packet, model).velocity_x(t);
}

double expectation_velocity_y_oracle(const WavePacket& packet, const TruncatedModel& model,
                                     double t) {
  return VelocityOracle(packet, model).velocity_y(t).real();
}

ProportionalityFit fit_proportionality(std::span<const double> closed,
                                       std::span<const double> oracle) {
  if (closed.size() != oracle.size() || closed.empty()) {
    throw std::invalid_argument("fit_proportionality: series must be non-empty and equally long");
  }
  double peak = 0.0;
  std::size_t peak_at = 0;
  for (std::size_t i = 0; i < closed.size(); ++i) {
    if (std::abs(closed[i]) > peak) {
      peak = std::abs(closed[i]);
      peak_at = i;
    }
  }
  if (peak == 0.0) throw ContractError("closed-form series vanishes identically; no K to fit");

  const std::size_t anchor = std::abs(closed[0]) > 1e-3 * peak ? 0 : peak_at;
  ProportionalityFit fit;
  fit.constant = oracle[anchor] / closed[anchor];
  for (std::size_t i = 0; i < closed.size(); ++i) {
    if (std::abs(closed[i]) <= 1e-3 * peak) continue;
    const double spread = std::abs(oracle[i] / closed[i] / fit.constant - 1.0);
    fit.max_relative_spread = std::max(fit.max_relative_spread, spread);
    ++fit.samples_used;
  }
  return fit;
}

Trace sample_trace(const WavePacket& packet, const TruncatedModel* model, const TimeGrid& grid,
                   SampleOptions options) {
  grid.validate();
  const VelocitySeries series(packet);
  std::optional<VelocityOracle> oracle;
  if (model != nullptr) oracle.emplace(packet, *model);
  const Populations pop = populations(packet);
  const double hbar = packet.params().hbar;

  Trace trace;
  trace.grid = grid;
  const auto n = static_cast<std::size_t>(grid.n_samples);
  trace.v_x_closed.resize(n);
  trace.autocorr.resize(n);
  if (oracle) trace.v_x_oracle.emplace(n);

#ifdef _OPENMP
  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(threads)
#else
  (void)options;
#endif
  for (int i = 0; i < grid.n_samples; ++i) {
    const double t = grid.time(i);
    const auto k = static_cast<std::size_t>(i);
    trace.v_x_closed[k] = series.velocity_x(t);
    trace.autocorr[k] = autocorrelation(pop.weights, pop.energies, hbar, t);
    if (oracle) (*trace.v_x_oracle)[k] = oracle->velocity_x(t);
  }

  if (oracle) trace.proportionality = fit_proportionality(trace.v_x_closed, *trace.v_x_oracle);
  return trace;
}

}  // namespace zbr
