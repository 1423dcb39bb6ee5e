#include <benchmark/benchmark.h>

#include <random>

#include "fine/construct.hpp"
#include "fine/inequalities.hpp"
#include "fine/lp_oracle.hpp"
#include "fine/maxent.hpp"
#include "fine/moments.hpp"
#include "fine/peres.hpp"

namespace {

using namespace fine;

std::array<double, 4> random_satisfying(std::mt19937_64& gen) {
  const auto u = [&gen]() { return 2.0 * ((gen() >> 11) * 0x1.0p-53) - 1.0; };
  for (;;) {
    const std::array<double, 4> c = {u(), u(), u(), u()};
    if (chsh_report(c[0], c[1], c[2], c[3]).pass) return c;
  }
}

void BM_ChshReport(benchmark::State& state) {
  std::mt19937_64 gen(1);
  const auto c = random_satisfying(gen);
  for (auto _ : state) {
    benchmark::DoNotOptimize(chsh_report(c[0], c[1], c[2], c[3]));
  }
}
BENCHMARK(BM_ChshReport);

void BM_ConstructChsh(benchmark::State& state) {
  std::mt19937_64 gen(2);
  const auto c = random_satisfying(gen);
  for (auto _ : state) {
    benchmark::DoNotOptimize(construct_joint_chsh(c[0], c[1], c[2], c[3]));
  }
}
BENCHMARK(BM_ConstructChsh);

void BM_LpFeasible(benchmark::State& state) {
  std::mt19937_64 gen(3);
  const auto c = random_satisfying(gen);
  const PairMarginals pm =
      make_pair_marginals({0, 0, 0, 0}, c[0], c[1], c[2], c[3]);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lp_feasible(pm));
  }
}
BENCHMARK(BM_LpFeasible);

void BM_FitVectors(benchmark::State& state) {
  std::mt19937_64 gen(4);
  const auto c = random_satisfying(gen);
  const AngleSet target = angles_from_corrs(c[0], c[1], c[2], c[3]);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_vectors(target));
  }
}
BENCHMARK(BM_FitVectors);

void BM_MonteCarlo(benchmark::State& state) {
  const VectorQuad q{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1},
                     Vec3{0.6, 0.8, 0.0}};
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(joint_from_vectors_mc(q, n, 11));
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(n));
}
BENCHMARK(BM_MonteCarlo)->Arg(100000);

void BM_SolveMaxEnt(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_maxent(0.3, -0.2, 0.4, 0.1));
  }
}
BENCHMARK(BM_SolveMaxEnt);

}  // namespace

BENCHMARK_MAIN();
