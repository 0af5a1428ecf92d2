#include <benchmark/benchmark.h>

#include "fibersim/campaign.hpp"
#include "fibersim/debruijn.hpp"
#include "fibersim/fft.hpp"
#include "fibersim/rng.hpp"
#include "fibersim/ssfm.hpp"
#include "fibersim/units.hpp"

using namespace fibersim;

namespace {

DualPolField noise_field(const SimulationGrid& grid, double power_w) {
  DualPolField f = make_zero_field(grid);
  Rng rng(1);
  const double amp = std::sqrt(power_w / 2.0);
  for (std::size_t i = 0; i < grid.n_samples; ++i) {
    f.x[i] = amp * cplx(rng.uniform_pm1(), rng.uniform_pm1());
    f.y[i] = amp * cplx(rng.uniform_pm1(), rng.uniform_pm1());
  }
  return f;
}

void BM_FftRoundTrip(benchmark::State& state) {
  std::vector<cplx> data(static_cast<std::size_t>(state.range(0)));
  Rng rng(2);
  for (auto& v : data) v = cplx(rng.uniform_pm1(), rng.uniform_pm1());
  for (auto _ : state) {
    fft::forward_inplace(data);
    fft::inverse_inplace(data);
    benchmark::DoNotOptimize(data.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FftRoundTrip)->RangeMultiplier(4)->Range(4096, 1 << 21)->Complexity();

void BM_NonlinearStep(benchmark::State& state) {
  SimulationGrid grid{static_cast<std::size_t>(state.range(0)),
                      512e9, 0.0};
  DualPolField f = noise_field(grid, 5e-3);
  for (auto _ : state) {
    nonlinear_step(f, 10.0, 1.3e-3, PropagationModel::Cnlse);
    benchmark::DoNotOptimize(f.x.data());
  }
}
BENCHMARK(BM_NonlinearStep)->Arg(65536);

void BM_ApplyPlate(benchmark::State& state) {
  SimulationGrid grid{65536, 512e9, 0.0};
  DualPolField f = noise_field(grid, 5e-3);
  Rng rng(3);
  const PlateSpec plate{haar_unitary(rng), 1.4e-13, 2000.0};
  for (auto _ : state) {
    apply_plate(f, plate);
    benchmark::DoNotOptimize(f.x.data());
  }
}
BENCHMARK(BM_ApplyPlate);

void BM_DebruijnOrder7(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto seq = debruijn_q4_order7(seed++);
    benchmark::DoNotOptimize(seq.data());
  }
}
BENCHMARK(BM_DebruijnOrder7);

void BM_PropagateShortSpan(benchmark::State& state) {
  // 1 km of SMF at desk-scale grid resolution.
  TxConfig tx;
  tx.n_channels = 5;
  tx.n_symbols = 1024;
  tx.oversampling = 16;
  const WdmSignal sig = build_wdm_field(tx);
  FiberSpec fiber = smf_fiber();
  fiber.length_m = 1e3;
  const PlateSequence plates = draw_plate_sequence(fiber.pmd_si, fiber.length_m, 1, 5);
  for (auto _ : state) {
    DualPolField f = sig.field;
    propagate_span(f, fiber, plates, PropagationModel::ManakovPmd);
    benchmark::DoNotOptimize(f.x.data());
  }
}
BENCHMARK(BM_PropagateShortSpan)->Unit(benchmark::kMillisecond);

void BM_EstimateAnl(benchmark::State& state) {
  TxConfig tx;
  tx.n_channels = 1;
  tx.n_symbols = 16384;
  tx.oversampling = 2;
  const WdmSignal sig = build_wdm_field(tx);
  TSpacedSymbols syms;
  syms.x = map_qpsk(sig.plan.channels[0].symbols_x, tx.power_per_channel_w);
  syms.y = map_qpsk(sig.plan.channels[0].symbols_y, tx.power_per_channel_w);
  for (auto _ : state) {
    const RxResult r = estimate_a_nl(syms, sig.plan.channels[0], 1e-3);
    benchmark::DoNotOptimize(r.a_nl_w2);
  }
}
BENCHMARK(BM_EstimateAnl);

}  // namespace

BENCHMARK_MAIN();
