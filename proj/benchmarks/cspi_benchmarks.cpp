#include <benchmark/benchmark.h>

#include "cspi/discrete_pi.hpp"
#include "cspi/semiclassics.hpp"
#include "cspi/su2_rep.hpp"

namespace {

void BM_CoherentState(benchmark::State& state) {
  const cspi::SpinRep rep(static_cast<int>(state.range(0)));
  double theta = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cspi::coherent_state(rep, theta, 0.7));
    theta = theta < 3.0 ? theta + 0.01 : 0.1;
  }
}
BENCHMARK(BM_CoherentState)->Arg(2)->Arg(10)->Arg(40);

void BM_SpinTransferZ(benchmark::State& state) {
  const int two_s = static_cast<int>(state.range(0));
  const cspi::SpinRep rep(two_s);
  const auto h = cspi::DiagonalSpinHamiltonian::polynomial({0, 0, 1});
  for (auto _ : state)
    benchmark::DoNotOptimize(cspi::spin_transfer_z(rep, h, 1.0, static_cast<int>(state.range(1)),
                                                   cspi::SliceMode::first_order, two_s + 2, 2 * two_s + 2));
}
BENCHMARK(BM_SpinTransferZ)->Args({2, 64})->Args({6, 64})->Args({2, 1024})->Unit(benchmark::kMillisecond);

void BM_BoseTransferZ(benchmark::State& state) {
  const auto fock = cspi::build_fock(static_cast<int>(state.range(0)));
  const auto h = cspi::bose_hubbard_hamiltonian(fock, 0.5, 1.0, cspi::Ordering::normal);
  const auto grid = cspi::default_plane_grid(fock);
  for (auto _ : state)
    benchmark::DoNotOptimize(cspi::bose_transfer_z(fock, h, 1.0, 32, cspi::SliceMode::exact_slice, grid));
}
BENCHMARK(BM_BoseTransferZ)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_SolveSaddles(benchmark::State& state) {
  const cspi::PropagatorParams p;
  for (auto _ : state) benchmark::DoNotOptimize(cspi::solve_saddles(p));
}
BENCHMARK(BM_SolveSaddles)->Unit(benchmark::kMicrosecond);

void BM_HsIntegral(benchmark::State& state) {
  cspi::PropagatorParams p;
  p.h = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cspi::hs_exact_propagator(p));
}
BENCHMARK(BM_HsIntegral)->Arg(1)->Arg(8)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
