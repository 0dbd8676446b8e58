// Serial reference kernels against their OpenMP versions, plus a whole
// distributed round. Sizes follow the N=100, d=10 experiments and a larger
// 1000-agent case where the parallel split has more work per thread.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <vector>

#include "mdkit/kernels.hpp"
#include "mdkit/solver_dist.hpp"

using namespace mdkit;

namespace {

struct Setup {
  Setup(std::size_t agents, std::size_t edges)
      : p(generate_instance(agents, 10, 1)),
        A(metropolis_weights(generate_graph(agents, edges, 1))),
        part(AgentPartition::one_row_per_agent(agents)),
        X(agents, 10),
        V(agents, 10),
        N(agents, 10),
        norms(agents) {
    for (std::size_t i = 0; i < agents; ++i) {
      auto x = random_simplex_point(10, 100 + i);
      std::copy(x.coords().begin(), x.coords().end(), X.row(i).begin());
    }
  }
  ProblemInstance p;
  MixingMatrix A;
  AgentPartition part;
  AgentMatrix X, V, N;
  std::vector<double> norms;
};

Setup& setup(std::size_t agents) {
  static Setup small(100, 2678);
  static Setup large(1000, 20000);
  return agents == 100 ? small : large;
}

template <Execution E>
void BM_Mix(benchmark::State& st) {
  auto& s = setup(st.range(0));
  for (auto _ : st) {
    kernels::mix(E, s.A, s.X, s.V);
    benchmark::DoNotOptimize(s.V.data.data());
  }
  st.counters["threads"] = omp_get_max_threads();
}

template <Execution E>
void BM_LocalSteps(benchmark::State& st) {
  auto& s = setup(st.range(0));
  kernels::mix_serial(s.A, s.X, s.V);
  for (auto _ : st) {
    kernels::local_steps(E, s.p, s.part, MirrorMap::negative_entropy(), s.V, 0.01, s.N, s.norms);
    benchmark::DoNotOptimize(s.N.data.data());
  }
}

template <Execution E>
void BM_MaxPairwise(benchmark::State& st) {
  auto& s = setup(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::max_pairwise(E, s.X));
}

template <Execution E>
void BM_Rounds(benchmark::State& st) {
  auto& s = setup(st.range(0));
  const std::vector<Point> x0(s.part.agents(), random_simplex_point(10, 7));
  DistOptions o;
  o.execution = E;
  o.decimation = 100;
  for (auto _ : st) {
    auto t = run_dmd(s.p, MirrorMap::negative_entropy(), StepSchedule::harmonic(0.2), s.A, x0,
                     100, std::nullopt, false, o);
    benchmark::DoNotOptimize(t.final_f_centroid);
  }
}

}  // namespace

BENCHMARK(BM_Mix<Execution::serial>)->Arg(100)->Arg(1000);
BENCHMARK(BM_Mix<Execution::parallel>)->Arg(100)->Arg(1000);
BENCHMARK(BM_LocalSteps<Execution::serial>)->Arg(100)->Arg(1000);
BENCHMARK(BM_LocalSteps<Execution::parallel>)->Arg(100)->Arg(1000);
BENCHMARK(BM_MaxPairwise<Execution::serial>)->Arg(100)->Arg(1000);
BENCHMARK(BM_MaxPairwise<Execution::parallel>)->Arg(100)->Arg(1000);
BENCHMARK(BM_Rounds<Execution::serial>)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Rounds<Execution::parallel>)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
