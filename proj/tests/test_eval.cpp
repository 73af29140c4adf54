#include <doctest.h>

#include <random>

#include "brjuno/eval.hpp"
#include "test_util.hpp"

using namespace brjuno;

namespace {

// Independent series oracle: sum beta_{j-1} x_j^{-1/sigma} straight from a
// deep expansion, no closed form.
Real series_oracle(const CFSpec& spec, const SigmaParam& sp, long depth) {
  auto [S, beta] = partial_sum(spec, sp, depth);
  return S;
}

}  // namespace

TEST_CASE("closed form at eta_m against the direct series") {
  SigmaParam sp = SigmaParam::from_decimal("2", 60);
  for (long m = 1; m <= 6; ++m) {
    CFSpec spec;
    spec.period = {m};
    EvalReport rep = eval_periodic_exact(spec, sp);
    CHECK(rep.method == EvalMethod::kClosedForm);
    Real S = series_oracle(spec, sp, 200);
    // the series approaches the closed form from below
    CHECK(S <= rep.value.hi);
    CHECK(rep.value.lo - S < Real(1e-40, sp.prec()));
    CHECK(rep.value.width() < Real(1e-45, sp.prec()));
  }
}

TEST_CASE("closed form at eta_m equals eta^{-1/sigma}/(1-eta)") {
  SigmaParam sp = SigmaParam::from_decimal("1.5", 60);
  mpfr_prec_t prec = sp.prec();
  for (long m = 1; m <= 8; ++m) {
    CFSpec spec;
    spec.period = {m};
    EvalReport rep = eval_periodic_exact(spec, sp);
    Real et = eta(m, prec).root(prec);
    Real ref = inv_power(et, sp.sigma) / (Real(1L, prec) - et);
    CHECK(abs(rep.value.lo - ref) < Real(1e-45, prec));
  }
}

TEST_CASE("preperiod removal matches the direct series") {
  SigmaParam sp = SigmaParam::from_decimal("1", 60);
  std::mt19937 rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    CFSpec s = testutil::random_spec(rng, 8);
    EvalReport rep = eval_periodic_exact(s, sp);
    Real S = series_oracle(s, sp, 250);
    CHECK(S <= rep.value.hi + Real(1e-45, sp.prec()));
    CHECK(rep.value.lo - S < Real(1e-35, sp.prec()));
  }
}

TEST_CASE("functional equation residual is tiny on random periodic specs") {
  std::mt19937 rng(4242);
  for (const char* ss : {"0.7", "1", "2.5"}) {
    SigmaParam sp = SigmaParam::from_decimal(ss, 60);
    for (int trial = 0; trial < 100; ++trial) {
      CFSpec s = testutil::random_spec(rng, 12);
      Real res = functional_equation_residual(s, sp);
      CHECK(res < Real(1e-45, sp.prec()));
    }
  }
}

TEST_CASE("enclosures nest as the depth grows") {
  SigmaParam sp = SigmaParam::from_decimal("2", 50);
  CFSpec s = CFSpec::parse("[0; 2, 1, (4, 2, 7)]");
  EvalReport shallow = eval_enclosure(s, sp, 8);
  EvalReport deep = eval_enclosure(s, sp, 24);
  CHECK(deep.value.lo >= shallow.value.lo);
  CHECK(deep.value.hi <= shallow.value.hi);
  EvalReport exact = eval_periodic_exact(s, sp);
  CHECK(deep.value.contains(exact.value.lo));
}

TEST_CASE("tail bound dominates the closed form for bounded quotients") {
  SigmaParam sp = SigmaParam::from_decimal("1", 50);
  for (long m = 1; m <= 10; ++m) {
    CFSpec s;
    s.period = {m};
    EvalReport rep = eval_periodic_exact(s, sp);
    CHECK(rep.value.hi <= tail_bound(m, sp));
  }
}

TEST_CASE("partial sums are monotone and converge within the tail bound") {
  SigmaParam sp = SigmaParam::from_decimal("2", 60);
  CFSpec s;
  s.period = {3};
  EvalReport exact = eval_periodic_exact(s, sp);
  Real prev(0L, sp.prec());
  for (long K = 10; K <= 100; K += 10) {
    auto [S, beta] = partial_sum(s, sp, K);
    CHECK(S >= prev);
    CHECK(S <= exact.value.hi);
    CHECK(exact.value.lo <= S + beta * tail_bound(3, sp));
    prev = S;
  }
}
