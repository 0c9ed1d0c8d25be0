#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "support/oracles.hpp"
#include "zbrevival/dynamics.hpp"
#include "zbrevival/errors.hpp"
#include "zbrevival/spectrum.hpp"
#include "zbrevival/timescales.hpp"

using namespace zbr;
namespace zt = zbr::testing;

namespace {

const PhysicalParams kFig = PhysicalParams::atomic(1e3);

WavePacket preset_packet(int n0, double sigma) {
  return build_packet({n0, sigma, recommend_cutoff(n0, sigma), {}}, kFig);
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_CASE("closed form at t = 0 matches a direct sum") {
  const auto packet = preset_packet(30, 3.0);
  double expected = 0.0;
  for (int n = 0; n < packet.n_max(); ++n) {
    const double cn = std::sqrt(2.0) * packet.amplitude(n, Branch::positive).real();
    const double cn1 = std::sqrt(2.0) * packet.amplitude(n + 1, Branch::positive).real();
    const double x0 = 0.5 / std::sqrt(spectrum_radicand(kFig, n));
    const double x1 = 0.5 / std::sqrt(spectrum_radicand(kFig, n + 1));
    const double g0 = std::sqrt(0.5 + x0), d0 = std::sqrt(0.5 - x0);
    const double g1 = std::sqrt(0.5 + x1), d1 = std::sqrt(0.5 - x1);
    expected += 2.0 * cn * cn1 * ((g0 * g1 - d0 * d1) - (g1 * d0 - g0 * d1));
  }
  CHECK(velocity_x_closed(packet, 0.0) == doctest::Approx(expected).epsilon(1e-13));
  CHECK(std::abs(expected) > 0.1);
}

TEST_CASE("closed form needs the equal real branch mix") {
  const auto lopsided = build_packet({30, 3.0, 40, BranchMix{1.0, 0.0}}, kFig);
  CHECK_THROWS_AS(VelocitySeries{lopsided}, ContractError);
  const auto phased = build_packet({30, 3.0, 40, BranchMix{M_SQRT1_2, cdouble(0.0, M_SQRT1_2)}}, kFig);
  CHECK_THROWS_AS((void)velocity_x_closed(phased, 0.0), ContractError);
}

TEST_CASE("closed form is proportional to the matrix oracle for every preset") {
  struct Case {
    int n0;
    double sigma;
  };
  for (const Case c : {Case{30, 3.0}, Case{15, 3.0}, Case{10, 20.0}}) {
    CAPTURE(c.n0);
    const auto packet = preset_packet(c.n0, c.sigma);
    const auto model = build_truncated_model(kFig, packet.n_max() + kTruncationGuardBand);
    const auto scales = time_scales(kFig, c.n0);
    const auto grid = TimeGrid::with_max_step(0.0, scales.t_cl, scales.t_zb / 10.0);
    const Trace trace = sample_trace(packet, &model, grid, {1});
    REQUIRE(trace.proportionality.has_value());
    CHECK(trace.proportionality->max_relative_spread < 1e-8);
    CHECK(trace.proportionality->constant == doctest::Approx(kFig.light_speed / 2.0).epsilon(1e-9));
    CHECK(trace.proportionality->samples_used > trace.v_x_closed.size() / 2);
  }
}

TEST_CASE("alternative coefficient conventions are not proportional to the oracle") {
  const auto packet = preset_packet(30, 3.0);
  const auto model = build_truncated_model(kFig, packet.n_max() + kTruncationGuardBand);
  std::vector<zt::SeriesTerm> symmetric;
  for (int n = 0; n < packet.n_max(); ++n) {
    const double cn = std::sqrt(2.0) * packet.amplitude(n, Branch::positive).real();
    const double cn1 = std::sqrt(2.0) * packet.amplitude(n + 1, Branch::positive).real();
    const auto w0 = spinor_weights(kFig, n);
    const auto w1 = spinor_weights(kFig, n + 1);
    const double e0 = energy(kFig, n, Branch::positive);
    const double e1 = energy(kFig, n + 1, Branch::positive);
    symmetric.push_back({cn * cn1, w0.gamma * w1.gamma + w0.delta * w1.delta,
                       w1.gamma * w0.delta + w0.gamma * w1.delta, e0 + e1, e0 - e1});
  }
  const auto grid = TimeGrid::with_max_step(0.0, 20 * zb_period(kFig, 30), zb_period(kFig, 30) / 20);
  std::vector<double> series, oracle;
  const VelocityOracle exact(packet, model);
  for (double t : grid.times()) {
    series.push_back(zt::evaluate_series(symmetric, t));
    oracle.push_back(exact.velocity_x(t));
  }
  CHECK(fit_proportionality(series, oracle).max_relative_spread > 1e-2);
}

TEST_CASE("closed form oscillates at the ZB period") {
  const auto packet = preset_packet(30, 3.0);
  const double t_zb = zb_period(kFig, 30);
  const auto grid = TimeGrid::with_max_step(0.0, 12 * t_zb, t_zb / 400);
  const auto ts = grid.times();
  std::vector<double> peaks;
  double prev2 = velocity_x_closed(packet, ts[0]);
  double prev1 = velocity_x_closed(packet, ts[1]);
  for (std::size_t i = 2; i < ts.size(); ++i) {
    const double cur = velocity_x_closed(packet, ts[i]);
    if (prev1 > prev2 && prev1 >= cur) peaks.push_back(ts[i - 1]);
    prev2 = prev1;
    prev1 = cur;
  }
  REQUIRE(peaks.size() >= 10);
  const double spacing = (peaks.back() - peaks.front()) / static_cast<double>(peaks.size() - 1);
  CHECK(std::abs(spacing / t_zb - 1.0) < 0.02);
}

TEST_CASE("closed form is even in time and bounded") {
  const auto packet = preset_packet(15, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double t = zt::uniform(0.0, 2.0);
    CHECK(velocity_x_closed(packet, t) == velocity_x_closed(packet, -t));
    CHECK(std::abs(velocity_x_closed(packet, t)) <= 2.0 + 1e-12);
  }
}

TEST_CASE("y velocity: reference model vs full-oracle series") {
  const auto packet = preset_packet(30, 3.0);
  const auto model = build_truncated_model(kFig, packet.n_max() + kTruncationGuardBand);
  const VelocityOracle exact(packet, model);
  double max_oracle = 0.0;
  double max_diff = 0.0;
  const double t_zb = zb_period(kFig, 30);
  for (int i = 0; i < 400; ++i) {
    const double t = i * t_zb / 17.0;
    const cdouble vy = exact.velocity_y(t);
    CHECK(std::abs(vy.imag()) < 1e-9);
    CHECK(velocity_y(packet, t) == 0.0);
    max_oracle = std::max(max_oracle, std::abs(vy.real()));
    max_diff = std::max(max_diff, std::abs(vy.real() - kFig.light_speed / 2.0 * velocity_y_series(packet, t)));
  }
  CHECK(max_oracle > 1.0);
  CHECK(max_diff < 1e-9 * max_oracle);
}

TEST_CASE("autocorrelation: unit start and bound") {
  for (auto [n0, sigma] : {std::pair{30, 3.0}, std::pair{10, 20.0}}) {
    const auto packet = preset_packet(n0, sigma);
    CHECK(std::abs(autocorrelation(packet, 0.0) - cdouble{1.0}) < 1e-14);
    for (int trial = 0; trial < 200; ++trial) {
      CHECK(std::abs(autocorrelation(packet, zt::uniform(0.0, 3.0))) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("autocorrelation: imaginary part comes only from the unpaired ground state") {
  const auto fig1 = preset_packet(30, 3.0);
  const auto fig3 = preset_packet(10, 20.0);
  const double w0 = std::norm(fig3.amplitude(0, Branch::positive));
  const double e0 = energy(kFig, 0, Branch::positive);
  REQUIRE(w0 > 1e-4);
  for (int trial = 0; trial < 100; ++trial) {
    const double t = zt::uniform(0.0, 2.0);
    CHECK(std::abs(autocorrelation(fig1, t).imag()) < 1e-10);
    CHECK(std::abs(autocorrelation(fig3, t).imag() - w0 * std::sin(e0 * t)) < 1e-10);
  }
}

TEST_CASE("autocorrelation: exact return for a commensurate spectrum") {
  const double period = 0.37;
  std::vector<double> weights, energies;
  double total = 0.0;
  for (int k = 1; k <= 9; ++k) {
    weights.push_back(1.0 / k);
    energies.push_back(2.0 * M_PI * k * k / period);
    total += 1.0 / k;
  }
  for (double& w : weights) w /= total;
  CHECK(std::abs(autocorrelation(weights, energies, 1.0, period) - cdouble{1.0}) < 1e-12);
  CHECK(std::abs(autocorrelation(weights, energies, 1.0, 0.5 * period)) < 0.99);
  std::vector<double> shorter(3, 0.1);
  CHECK_THROWS_AS((void)autocorrelation(shorter, energies, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("autocorrelation: packet rebuilds near the revival time") {
  const auto packet = preset_packet(30, 3.0);
  const auto s = time_scales(kFig, 30);
  auto window_max = [&](double centre, double half) {
    double m = 0.0;
    for (double t = centre - half; t <= centre + half; t += s.t_zb / 10) {
      m = std::max(m, std::abs(autocorrelation(packet, t)));
    }
    return m;
  };
  CHECK(window_max(s.t_r, s.t_cl) > 0.9);
  CHECK(window_max(0.5 * s.t_r, s.t_cl) > 0.9);
  CHECK(window_max(0.37 * s.t_r, s.t_cl) < 0.7);
}

TEST_CASE("evolution: overlap reproduces the autocorrelation and keeps the norm") {
  const auto packet = build_packet({12, 5.0, recommend_cutoff(12, 5.0), BranchMix{0.6, cdouble(0.0, 0.8)}}, kFig);
  for (int trial = 0; trial < 50; ++trial) {
    const double t = zt::uniform(0.0, 1.0);
    const auto later = evolve_state(packet, t);
    CHECK(std::abs(later.norm_squared() - 1.0) < 1e-13);
    CHECK(std::abs(overlap(packet, later) - autocorrelation(packet, t)) < 1e-12);
  }
}

TEST_CASE("oracle: stationary states carry no mean velocity") {
  const auto model = build_truncated_model(kFig, 12);
  for (int n : {0, 1, 5, 10}) {
    const auto packet = single_eigenstate_packet(kFig, n, Branch::positive, 10);
    for (double t : {0.0, 1e-4, 0.3}) {
      CHECK(std::abs(expectation_velocity_oracle(packet, model, t)) < 1e-12 * kFig.light_speed);
    }
  }
}

TEST_CASE("oracle: velocity bounded by c for random packets") {
  const auto model = build_truncated_model(kFig, 60);
  for (int trial = 0; trial < 20; ++trial) {
    const int n0 = zt::uniform_int(3, 35);
    const double sigma = zt::log_uniform(0.5, 6.0);
    const int n_max = recommend_cutoff(n0, sigma);
    if (n_max + kTruncationGuardBand > model.n_max) continue;
    const double theta = zt::uniform(0.0, M_PI / 2);
    const BranchMix mix{std::cos(theta), std::polar(std::sin(theta), zt::uniform(-M_PI, M_PI))};
    const auto packet = build_packet({n0, sigma, n_max, mix}, kFig);
    const VelocityOracle exact(packet, model);
    for (int k = 0; k < 20; ++k) {
      const double t = zt::uniform(0.0, 0.1);
      CHECK(std::abs(exact.velocity_x(t)) <= kFig.light_speed * (1 + 1e-12));
      CHECK(std::abs(exact.state(t).squaredNorm() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("oracle: cutoff and parameter contracts") {
  const auto packet = preset_packet(30, 3.0);
  CHECK_THROWS_AS(VelocityOracle(packet, build_truncated_model(kFig, packet.n_max() + 1)), ContractError);
  CHECK_THROWS_AS(VelocityOracle(packet, build_truncated_model(PhysicalParams::atomic(999.0), packet.n_max() + 2)),
                  ContractError);
}

TEST_CASE("very narrow packets have no inter-level coherence") {
  const auto packet = build_packet({20, 0.01, recommend_cutoff(20, 0.01), {}}, kFig);
  for (double t : {0.0, 1e-3, 0.5}) CHECK(std::abs(velocity_x_closed(packet, t)) < 1e-15);
}

TEST_CASE("time grid: endpoints, refinement and validation") {
  const TimeGrid coarse{0.0, 1.3, 101};
  const TimeGrid fine{0.0, 1.3, 201};
  CHECK(coarse.time(0) == 0.0);
  CHECK(coarse.time(100) == 1.3);
  for (int i = 0; i <= 100; ++i) CHECK(coarse.time(i) == fine.time(2 * i));

  const auto g = TimeGrid::with_max_step(0.0, 1.0, 0.3);
  CHECK(g.n_samples == 5);
  CHECK(g.step() <= 0.3);
  CHECK_THROWS_AS((TimeGrid{1.0, 0.5, 10}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((TimeGrid{0.0, 1.0, 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((void)TimeGrid::with_max_step(0.0, 1.0, 1e-12), SizeError);
}

TEST_CASE("sampling: refined grids agree on shared times") {
  const auto packet = preset_packet(30, 3.0);
  const Trace a = sample_trace(packet, nullptr, {0.0, 1e-3, 101}, {1});
  const Trace b = sample_trace(packet, nullptr, {0.0, 1e-3, 201}, {1});
  CHECK_FALSE(a.v_x_oracle.has_value());
  CHECK_FALSE(a.proportionality.has_value());
  for (std::size_t i = 0; i < a.v_x_closed.size(); ++i) {
    CHECK(a.v_x_closed[i] == b.v_x_closed[2 * i]);
    CHECK(a.autocorr[i] == b.autocorr[2 * i]);
  }
}

TEST_CASE("sampling: results do not depend on the thread count") {
  const auto packet = preset_packet(15, 3.0);
  const auto model = build_truncated_model(kFig, packet.n_max() + 2);
  const TimeGrid grid{0.0, 2e-3, 257};
  const Trace one = sample_trace(packet, &model, grid, {1});
  const Trace four = sample_trace(packet, &model, grid, {4});
  CHECK(one.v_x_closed == four.v_x_closed);
  CHECK(*one.v_x_oracle == *four.v_x_oracle);
  CHECK(one.autocorr == four.autocorr);
  CHECK(max_abs(one.v_x_closed) > 0.0);
}

TEST_CASE("proportionality fit on synthetic series") {
  std::vector<double> closed, oracle;
  for (int i = 0; i < 100; ++i) {
    closed.push_back(std::cos(0.1 * i));
    oracle.push_back(3.0 * std::cos(0.1 * i));
  }
  auto fit = fit_proportionality(closed, oracle);
  CHECK(fit.constant == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(fit.max_relative_spread < 1e-14);
  oracle[40] *= 1.01;
  fit = fit_proportionality(closed, oracle);
  CHECK(fit.max_relative_spread == doctest::Approx(0.01).epsilon(1e-6));

  std::vector<double> zeros(5, 0.0);
  CHECK_THROWS_AS((void)fit_proportionality(zeros, zeros), ContractError);
  CHECK_THROWS_AS((void)fit_proportionality(zeros, closed), std::invalid_argument);
}
