#include <benchmark/benchmark.h>

#include "brjuno/bounds.hpp"
#include "brjuno/certified.hpp"
#include "brjuno/eval.hpp"
#include "brjuno/minima.hpp"

using namespace brjuno;

static void BM_eval_periodic_exact(benchmark::State& state) {
  SigmaParam sp = SigmaParam::from_decimal("2", state.range(0));
  CFSpec s = CFSpec::parse("[0; 2, 1, (4, 2, 7)]");
  for (auto _ : state) {
    EvalReport rep = eval_periodic_exact(s, sp);
    benchmark::DoNotOptimize(rep.value.lo);
  }
}
BENCHMARK(BM_eval_periodic_exact)->Arg(50)->Arg(200)->Arg(1000);

static void BM_partial_sum(benchmark::State& state) {
  SigmaParam sp = SigmaParam::from_decimal("1", 60);
  CFSpec s = CFSpec::parse("[0; (1, 2, 3)]");
  for (auto _ : state) {
    auto [S, beta] = partial_sum(s, sp, state.range(0));
    benchmark::DoNotOptimize(S);
  }
}
BENCHMARK(BM_partial_sum)->Arg(20)->Arg(100);

static void BM_w_interval(benchmark::State& state) {
  mpfr_prec_t prec = bits_for_digits(60);
  Interval x(mpq_class(1, 10), prec);
  for (auto _ : state) {
    Interval w = certified::w_fn(x);
    benchmark::DoNotOptimize(w);
  }
}
BENCHMARK(BM_w_interval);

static void BM_phase_row(benchmark::State& state) {
  mpfr_prec_t prec = bits_for_digits(40);
  Real sigma(2L, prec);
  minima::CandidateFamily fam;
  fam.float_grid_points = 1000;
  for (auto _ : state) {
    auto rows = minima::phase_scan(sigma, sigma, 1, fam, 40, 1);
    benchmark::DoNotOptimize(rows);
  }
}
BENCHMARK(BM_phase_row);

BENCHMARK_MAIN();
