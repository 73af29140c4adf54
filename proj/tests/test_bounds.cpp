#include <doctest.h>

#include "brjuno/bounds.hpp"
#include "brjuno/eval.hpp"

using namespace brjuno;

namespace {
const mpfr_prec_t kPrec = bits_for_digits(50);
}

TEST_CASE("b* closed form") {
  // sigma = 1: b* = 2^2 / 1 = 4
  Real bs = bounds::b_star(Real(1L, kPrec));
  CHECK(abs(bs - Real(4L, kPrec)) < Real(1e-40, kPrec));
  // sigma = 2: b* = 3^{3/2} / 2
  Real bs2 = bounds::b_star(Real(2L, kPrec));
  Real ref = sqrt(Real(27L, kPrec)) / Real(2L, kPrec);
  CHECK(abs(bs2 - ref) < Real(1e-40, kPrec));
}

TEST_CASE("phi iteration increases strictly to b*") {
  for (const char* ss : {"0.5", "1", "2", "5"}) {
    Real sigma = Real::from_decimal(ss, kPrec);
    auto it = bounds::b_star_iterate(sigma, 200);
    CHECK(it.converged);
    Real bs = bounds::b_star(sigma);
    for (size_t i = 1; i < it.values.size(); ++i) {
      CHECK(it.values[i] > it.values[i - 1]);
      CHECK(it.values[i] < bs + Real(1e-30, kPrec));
    }
  }
}

TEST_CASE("g has its minimum at the closed-form argmin") {
  auto ctx = bounds::make_context(Real(2L, kPrec));
  Real xm = bounds::g_argmin(ctx);
  CHECK(abs(bounds::g_prime(xm, ctx)) < Real(1e-35, kPrec));
  Real eps(1e-6, kPrec);
  CHECK(bounds::g(xm + eps, ctx) > bounds::g(xm, ctx));
  CHECK(bounds::g(xm - eps, ctx) > bounds::g(xm, ctx));
  CHECK(bounds::g_second(xm, ctx) > Real(0L, kPrec));
}

TEST_CASE("cylinder bound dominates g with tangency at p") {
  for (const char* ss : {"1", "2", "3"}) {
    auto ctx = bounds::make_context(Real::from_decimal(ss, kPrec));
    for (long k = 1; k <= 6; ++k) {
      auto cert = bounds::verify_cylinder_dominance(k, ctx, 64);
      CHECK(cert.passed);
      CHECK(cert.violations == 0);
      Real p = bounds::tangency_point(k, ctx);
      Real tol(1e-10, kPrec);
      CHECK(abs(bounds::g_k(p, k, ctx) - bounds::g(p, ctx)) < tol);
      CHECK(abs(bounds::g_k_prime(p, k, ctx) - bounds::g_prime(p, ctx)) < tol);
    }
  }
}

TEST_CASE("g_min_over brackets the interior minimum") {
  auto ctx = bounds::make_context(Real(1L, kPrec));
  Real xm = bounds::g_argmin(ctx);
  Real a(0.1, kPrec), b(0.9, kPrec);
  Real m = bounds::g_min_over(a, b, ctx);
  CHECK(m <= bounds::g(xm, ctx));
  CHECK(m <= bounds::g(a + Real(1e-3, kPrec), ctx));
  // on an interval right of the argmin the left endpoint is the infimum
  Real m2 = bounds::g_min_over(Real(0.6, kPrec), b, ctx);
  CHECK(m2 <= bounds::g(Real(0.6001, kPrec), ctx));
}

TEST_CASE("b* floors the closed forms at the fixed points") {
  SigmaParam sp = SigmaParam::from_decimal("2", 50);
  Real bs = bounds::b_star(sp.sigma);
  for (long m = 1; m <= 12; ++m) {
    CFSpec s;
    s.period = {m};
    EvalReport rep = eval_periodic_exact(s, sp);
    CHECK(rep.value.lo > bs);
  }
}
