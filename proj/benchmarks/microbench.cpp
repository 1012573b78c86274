// Microbenchmarks for the hot TT kernels: rounding, matvec, the local DMRG
// solver, and space-time system assembly.

#include <benchmark/benchmark.h>

#include <random>

#include "ttst/discretization.hpp"
#include "ttst/dmrg.hpp"
#include "ttst/multilevel.hpp"

using namespace ttst;

namespace {

TtVector random_qtt(int d, int rank, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> dist;
  TtVector x;
  for (int k = 0; k < d; ++k) {
    const int r0 = k == 0 ? 1 : rank;
    const int r1 = k == d - 1 ? 1 : rank;
    TtCore3 c(r0, 2, r1);
    for (auto& v : c.v) v = dist(gen);
    x.cores.push_back(std::move(c));
  }
  return x;
}

}  // namespace

static void BM_tt_round(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  TtVector x = tt_add(random_qtt(d, 20, 1), random_qtt(d, 20, 2));
  for (auto _ : state) benchmark::DoNotOptimize(tt_round(x, 1e-10));
  state.SetComplexityN(d);
}
BENCHMARK(BM_tt_round)->Arg(10)->Arg(14)->Arg(18)->Complexity();

static void BM_tt_matvec(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  TtOperator a = build_time_operator(TimeOp::d_t, d);
  TtVector x = random_qtt(d, 20, 3);
  for (auto _ : state) benchmark::DoNotOptimize(tt_matvec(a, x));
}
BENCHMARK(BM_tt_matvec)->Arg(10)->Arg(14)->Arg(18);

static void BM_assemble(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  ProblemSpec p = make_problem("fisher_kpp");
  GridSpec g{q, q, p.x_a, p.x_b, p.T};
  for (auto _ : state) benchmark::DoNotOptimize(assemble(p, g, SchemeId::euler_m1, 1e-10));
}
BENCHMARK(BM_assemble)->Arg(5)->Arg(7)->Arg(9);

static void BM_dmrg_linear_solve(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  ProblemSpec p = make_problem("fisher_kpp");
  GridSpec g{q, q, p.x_a, p.x_b, p.T};
  AssembledSystem sys = assemble(p, g, SchemeId::euler_m1, 1e-10);
  TtVector u = tt_kron(qtt_ones(g.q_t), initial_condition_tt(p, g, 1e-12));
  TtOperator j = sys.jacobian(u, 1e-10);
  TtVector b = tt_round(tt_matvec(j, u), 1e-10);
  DmrgConfig cfg;
  cfg.n_sweeps = 2;
  for (auto _ : state) benchmark::DoNotOptimize(dmrg_solve(j, b, cfg));
}
BENCHMARK(BM_dmrg_linear_solve)->Arg(5)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);

static void BM_prolong_field(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  ProblemSpec p = make_problem("fisher_kpp");
  GridSpec g{q, q, p.x_a, p.x_b, p.T};
  TtVector u = tt_kron(qtt_ones(g.q_t), initial_condition_tt(p, g, 1e-12));
  for (auto _ : state) benchmark::DoNotOptimize(prolong_field(u, q, q, 1e-10));
}
BENCHMARK(BM_prolong_field)->Arg(5)->Arg(7)->Arg(9);

BENCHMARK_MAIN();
