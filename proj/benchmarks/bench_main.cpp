#include <benchmark/benchmark.h>

#include <cmath>

#include "ionlink/dynamics.hpp"
#include "ionlink/metrics.hpp"
#include "ionlink/model.hpp"

using namespace ionlink;

namespace {

void BM_EffectiveHamiltonian(benchmark::State& state) {
  SpaceLayout layout = protocol_layout();
  for (auto _ : state) {
    ComplexMatrix h = effective_hamiltonian(1.0e6, kFlyingAtom, kIon1, layout);
    benchmark::DoNotOptimize(h.data());
  }
}
BENCHMARK(BM_EffectiveHamiltonian);

void BM_UnitaryPropagator(benchmark::State& state) {
  SpaceLayout layout = protocol_layout();
  ComplexMatrix h = effective_hamiltonian(1.0e6, kFlyingAtom, kIon1, layout);
  for (auto _ : state) {
    ComplexMatrix u = expm_hermitian_generator(h, 1.0e-6);
    benchmark::DoNotOptimize(u.data());
  }
}
BENCHMARK(BM_UnitaryPropagator);

void BM_NumericChannel(benchmark::State& state) {
  const int steps = static_cast<int>(state.range(0));
  EffectiveParams eff = EffectiveParams::canonical_for(1.0e6, 1.0e6);
  ChannelSpec spec{200.0, 50.0, 5.0e-3};
  for (auto _ : state) {
    ProtocolResult r = run_protocol(eff, spec, FlightMode::numeric_noisy, steps);
    benchmark::DoNotOptimize(r.final_two_ion_state.matrix.data());
  }
}
BENCHMARK(BM_NumericChannel)->Arg(500)->Arg(2000);

void BM_AnalyticChannel(benchmark::State& state) {
  EffectiveParams eff = EffectiveParams::canonical_for(1.0e6, 1.0e6);
  ChannelSpec spec{200.0, 50.0, 5.0e-3};
  for (auto _ : state) {
    ProtocolResult r = run_protocol(eff, spec, FlightMode::analytic_noisy);
    benchmark::DoNotOptimize(r.final_two_ion_state.matrix.data());
  }
}
BENCHMARK(BM_AnalyticChannel);

void BM_Metrics(benchmark::State& state) {
  ComplexMatrix rho = analytic_final_state({200.0, 50.0, 3.0e-3}).matrix;
  for (auto _ : state) {
    benchmark::DoNotOptimize(concurrence(rho));
    benchmark::DoNotOptimize(fully_entangled_fraction(rho));
  }
}
BENCHMARK(BM_Metrics);

void BM_FefOracle(benchmark::State& state) {
  ComplexMatrix rho = analytic_final_state({200.0, 50.0, 3.0e-3}).matrix;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fef_bruteforce_oracle(rho, static_cast<int>(state.range(0)), 1));
  }
}
BENCHMARK(BM_FefOracle)->Arg(1000)->Arg(4000);

void BM_FullModelValidation(benchmark::State& state) {
  FullModelParams p;
  p.eta = 0.05;
  p.g_fly = 1.0;
  p.g_ion = std::exp(p.eta * p.eta / 2.0);
  p.delta = 20.0;
  p.nu = 200.0;
  p.n_field_max = static_cast<int>(state.range(0));
  p.n_vib_max = 1;
  FieldStateSpec field{FieldStateSpec::Kind::fock, 0.0, p.n_field_max};
  auto grid = default_validation_grid(p, 200);
  for (auto _ : state) {
    ValidationReport r = validate_effective_model(p, field, grid);
    benchmark::DoNotOptimize(r.exchange_frequency);
  }
}
BENCHMARK(BM_FullModelValidation)->Arg(3)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_MaxFlightTime(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(max_flight_time(200.0, 37.0, 300.0).t_max);
  }
}
BENCHMARK(BM_MaxFlightTime);

}  // namespace

BENCHMARK_MAIN();
