#include <benchmark/benchmark.h>

#include "zbrevival/analysis.hpp"
#include "zbrevival/dynamics.hpp"
#include "zbrevival/timescales.hpp"
#include "zbrevival/truncated_model.hpp"
#include "zbrevival/wavepacket.hpp"

namespace {

const zbr::PhysicalParams kParams = zbr::PhysicalParams::atomic(1e3);

zbr::WavePacket fig1_packet() { return zbr::build_packet({30, 3.0, 40, {}}, kParams); }

void BM_ClosedFormSample(benchmark::State& state) {
  const auto packet = fig1_packet();
  const zbr::VelocitySeries series(packet);
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(series.velocity_x(t));
    t += 1e-6;
  }
}
BENCHMARK(BM_ClosedFormSample);

void BM_OracleSample(benchmark::State& state) {
  const auto packet = fig1_packet();
  const auto model = zbr::build_truncated_model(kParams, 42);
  const zbr::VelocityOracle oracle(packet, model);
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle.velocity_x(t));
    t += 1e-6;
  }
}
BENCHMARK(BM_OracleSample);

void BM_Diagonalize(benchmark::State& state) {
  const auto model = zbr::build_truncated_model(kParams, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(zbr::sorted_eigenvalues(model));
}
BENCHMARK(BM_Diagonalize)->Arg(60)->Arg(200);

void BM_TraceClassicalPanel(benchmark::State& state) {
  const auto packet = fig1_packet();
  const auto s = zbr::time_scales(kParams, 30);
  const auto grid = zbr::TimeGrid::with_max_step(0.0, 4 * s.t_cl, s.t_zb / 40);
  for (auto _ : state) {
    benchmark::DoNotOptimize(zbr::sample_trace(packet, nullptr, grid, {.threads = 1}));
  }
  state.SetItemsProcessed(state.iterations() * grid.n_samples);
}
BENCHMARK(BM_TraceClassicalPanel)->Unit(benchmark::kMillisecond);

void BM_Envelope(benchmark::State& state) {
  const auto packet = fig1_packet();
  const auto s = zbr::time_scales(kParams, 30);
  const auto trace =
      zbr::sample_trace(packet, nullptr, zbr::TimeGrid::with_max_step(0.0, 0.1 * s.t_r, s.t_zb / 20), {.threads = 1});
  for (auto _ : state) benchmark::DoNotOptimize(zbr::zb_envelope(trace, s.t_zb));
  state.SetItemsProcessed(state.iterations() * trace.grid.n_samples);
}
BENCHMARK(BM_Envelope)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
