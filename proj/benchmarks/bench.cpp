#include <benchmark/benchmark.h>

#include "djcm/inversion.hpp"
#include "djcm/marginals.hpp"
#include "djcm/oracle.hpp"
#include "djcm/wigner.hpp"

using namespace djcm;

namespace {

const ModelParams kSkew = ModelParams::from_mixing(3.0, 1.0, 0.0);
const ModelParams kBalanced = ModelParams::from_mixing(1.0, 1.0, 0.0);

void BM_inversion_point_small_drive(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(xi_kernel(1.0, 2.0, kSkew, 12.5));
  }
}
BENCHMARK(BM_inversion_point_small_drive);

void BM_inversion_point_large_drive(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(xi_kernel(1.0, 20.0, kSkew, 12.5));
  }
}
BENCHMARK(BM_inversion_point_large_drive);

void BM_inversion_thermal_point(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(inversion_thermal(0.5, 2.0, kSkew, 9.0));
  }
}
BENCHMARK(BM_inversion_thermal_point);

void BM_wigner_kernel_adaptive(benchmark::State& state) {
  KernelArgs args = KernelArgs::physical(1.0, 2.0);
  complex gamma{0.3, 0.2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(wigner_kernel(args, kSkew, gamma, 37.0));
  }
}
BENCHMARK(BM_wigner_kernel_adaptive);

void BM_wigner_kernel_finite_sum(benchmark::State& state) {
  KernelArgs args = KernelArgs::physical(1.0, 2.0);
  complex gamma{0.3, 0.2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        wigner_kernel_equal(args, kBalanced, gamma, 100.0, 50));
  }
}
BENCHMARK(BM_wigner_kernel_finite_sum);

void BM_wigner_surface_21x21(benchmark::State& state) {
  PhaseGrid grid{-10.0, 4.0, -7.0, 7.0, 21, 21};
  for (auto _ : state) {
    benchmark::DoNotOptimize(wigner_surface(CavityState::even_cat(1.0),
                                            DriveState{2.0}, kBalanced, 100.0,
                                            grid, 50));
  }
}
BENCHMARK(BM_wigner_surface_21x21)->Unit(benchmark::kMillisecond);

void BM_marginal_point(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(marginal_q_kernel(1.0, 2.0, kSkew, 0.3, 7.0));
  }
}
BENCHMARK(BM_marginal_point);

void BM_oracle_evolve(benchmark::State& state) {
  OracleEvolver ev(kSkew, 19, 30);
  FockCoefficients ca = fock_coefficients(CavityState::coherent(1.0), 19);
  FockCoefficients cb = fock_coefficients(CavityState::coherent(2.0), 30);
  TruncatedState st0 = ev.prepare_excited(ca.amplitudes, cb.amplitudes);
  benchmark::DoNotOptimize(ev.evolve(st0, 1.0));  // build the cached blocks
  for (auto _ : state) {
    benchmark::DoNotOptimize(ev.evolve(st0, 12.5));
  }
}
BENCHMARK(BM_oracle_evolve);

void BM_oracle_wigner_point(benchmark::State& state) {
  OracleEvolver ev(kSkew, 100, 30);
  FockCoefficients ca = fock_coefficients(CavityState::coherent(1.0), 100);
  FockCoefficients cb = fock_coefficients(CavityState::coherent(2.0), 30);
  TruncatedState st =
      ev.evolve(ev.prepare_excited(ca.amplitudes, cb.amplitudes), 5.0);
  std::vector<complex> rho = reduced_density_a(st);
  complex gamma{0.3, 0.2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle_wigner(rho, 101, gamma));
  }
}
BENCHMARK(BM_oracle_wigner_point);

}  // namespace

BENCHMARK_MAIN();
