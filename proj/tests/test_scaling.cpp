#include <doctest.h>

#include "brjuno/scaling.hpp"

using namespace brjuno;

namespace {
const mpfr_prec_t kPrec = bits_for_digits(50);
}

TEST_CASE("denominator recursion for n = 2") {
  auto run = scaling::run_orbit(2, 10, 50);
  // G: 1, 3, 10, 33, 109, 360, ...
  REQUIRE(run.G.size() >= 7);
  CHECK(run.G[1] == 1);
  CHECK(run.G[2] == 3);
  CHECK(run.G[3] == 10);
  CHECK(run.G[4] == 33);
  CHECK(run.G[5] == 109);
  CHECK(run.G[6] == 360);
  CHECK(run.H[1] == 0);
  CHECK(run.H[2] == 1);
}

TEST_CASE("orbit alternates around eta and contracts") {
  auto run = scaling::run_orbit(3, 12, 50);
  for (long k = 1; k <= 11; ++k) {
    CHECK(run.delta[k].sign() * run.delta[k + 1].sign() < 0);
    CHECK(abs(run.delta[k + 1]) < abs(run.delta[k]));
  }
}

TEST_CASE("energies satisfy the functional-equation recursion") {
  // B(x_{k+1}) = x_{k+1}^{-1/n} + x_{k+1} B(x_k) since A(x_{k+1}) = x_k;
  // subtracting the same identity at eta gives a recursion for E_k.
  long n = 2;
  auto run = scaling::run_orbit(n, 10, 60);
  mpfr_prec_t prec = bits_for_digits(60);
  Real sigma(n, prec);
  Real eta = run.eta;
  Real Beta = inv_power(eta, sigma) / (Real(1L, prec) - eta);
  Real tol(1e-35, prec);
  for (long k = 1; k + 1 <= 10; ++k) {
    const Real& x1 = run.orbit[k + 1];
    Real ek = (run.energy[k].lo + run.energy[k].hi) / Real(2L, prec);
    Real pred = inv_power(x1, sigma) - inv_power(eta, sigma) +
                x1 * (ek + Beta) - eta * Beta;
    Real got = (run.energy[k + 1].lo + run.energy[k + 1].hi) / Real(2L, prec);
    CHECK(abs(got - pred) < tol);
  }
}

TEST_CASE("lambda_k stays in the exact rational bracket") {
  for (long n : {2L, 4L}) {
    auto run = scaling::run_orbit(n, 12, 50);
    for (long k = 1; 2 * k + 2 <= 12; ++k) {
      auto [lo, hi] = scaling::lambda_bounds(n, k);
      Real l = run.lambdas[k];
      CHECK(l >= Real(lo, kPrec) - Real(1e-40, kPrec));
      CHECK(l <= Real(hi, kPrec) + Real(1e-40, kPrec));
    }
  }
}

TEST_CASE("lambda brackets chain and shrink toward eta^2") {
  auto [lo1, hi1] = scaling::lambda_bounds(2, 1);
  auto [lo2, hi2] = scaling::lambda_bounds(2, 2);
  CHECK(lo1 < hi1);
  CHECK(lo2 == hi1);  // consecutive brackets share an endpoint
  CHECK(lo2 < hi2);
  CHECK(hi2 - lo2 < hi1 - lo1);
  CHECK(mpq_class(lo1) == mpq_class(1, 11));
  // both endpoints increase toward eta_3^2 from below
  mpfr_prec_t prec = bits_for_digits(50);
  Real eta = brjuno::eta(3, prec).root(prec);
  Real e2 = eta * eta;
  CHECK(Real(hi1, prec) < e2);
  CHECK(Real(hi2, prec) < e2);
  CHECK(e2 - Real(lo2, prec) < e2 - Real(lo1, prec));
}

TEST_CASE("rational seed probe reproduces the one-sided energies") {
  auto run = scaling::run_orbit_rational(2, mpq_class(3, 10), 6, 50);
  CHECK(run.rational_seed);
  // delta_1 = 3/10 - eta_3
  Real ref = Real(mpq_class(3, 10), kPrec) - run.eta;
  CHECK(abs(run.delta[1] - ref) < Real(1e-40, kPrec));
  CHECK(abs(run.delta[1] + Real::from_decimal("0.00277563773199464656", kPrec)) <
        Real(1e-18, kPrec));
}

TEST_CASE("exponent fit lands on the square-root cusp") {
  for (long n : {2L, 4L}) {
    auto fit = scaling::estimate_exponent(n, 12);
    CHECK(fit.tau_hat > Real(0.45, kPrec));
    CHECK(fit.tau_hat < Real(0.55, kPrec));
    CHECK(!fit.window.empty());
  }
}

TEST_CASE("energies scale like sqrt of the offset") {
  auto run = scaling::run_orbit(2, 12, 80);
  for (long k = 6; k <= 12; k += 2) {
    if (run.energy[k].lo.sign() <= 0) continue;
    Real ratio = run.energy[k].lo / sqrt(abs(run.delta[k]));
    CHECK(ratio > Real(0.1, kPrec));
    CHECK(ratio < Real(1.0, kPrec));
  }
}
