#include <doctest.h>

#include "brjuno/minima.hpp"

using namespace brjuno;

namespace {
const mpfr_prec_t kPrec = bits_for_digits(50);
}

TEST_CASE("sigma_star reference values") {
  Real s1 = minima::sigma_star(1, 50);
  CHECK(abs(s1 - Real::from_decimal("0.93578023291588882816", kPrec)) <
        Real(1e-18, kPrec));
  Real s2 = minima::sigma_star(2, 50);
  CHECK(abs(s2 - Real::from_decimal("1.79951810720629699415", kPrec)) <
        Real(1e-15, kPrec));
}

TEST_CASE("sigma_star agrees with the bisection route") {
  for (long n = 1; n <= 5; ++n) {
    Real a = minima::sigma_star(n, 50);
    Real b = minima::sigma_star_bisect(n, 50);
    CHECK(abs(a - b) < Real(1e-12, kPrec));
  }
}

TEST_CASE("sigma_star asymptote n - 1/2 + 5/(6n)") {
  for (long n : {50L, 100L, 200L}) {
    Real v = minima::sigma_star(n, 60);
    Real a = minima::sigma_star_asymptote(n, 60);
    Real scaled = abs(v - a) * Real(n, kPrec) * Real(n, kPrec);
    CHECK(scaled < Real(1L, kPrec));
  }
}

TEST_CASE("localize at integer sigma") {
  for (long n = 1; n <= 6; ++n) {
    auto cert = minima::localize(n, Real(n, kPrec), 50);
    CHECK(cert.passed);
    CHECK(cert.margin.sign() > 0);
    for (auto& c : cert.checks) CHECK(c.pass);
    if (n >= 2) CHECK(cert.route == "xi");
  }
}

TEST_CASE("localize n=1 below the polynomial route's reach") {
  auto cert = minima::localize(1, Real::from_decimal("0.95", kPrec), 50);
  CHECK(cert.passed);
  CHECK(cert.route == "cylinder-bnb");
}

TEST_CASE("monotonicity certificate") {
  for (long n = 1; n <= 6; ++n) {
    auto cert = minima::monotonicity_checks(n, Real(n, kPrec), 50);
    CHECK(cert.precondition_ok);
    CHECK(cert.passed);
  }
  // precondition fails when sigma is too large relative to n
  auto bad = minima::monotonicity_checks(2, Real(6L, kPrec), 50);
  CHECK(!bad.precondition_ok);
}

TEST_CASE("phase scan finds the fixed-point minimizer and its transitions") {
  minima::CandidateFamily fam;
  fam.float_grid_points = 2000;
  auto rows = minima::phase_scan(Real::from_decimal("0.8", kPrec),
                                 Real::from_decimal("2.0", kPrec), 13, fam, 40, 2);
  REQUIRE(rows.size() == 13);
  long transitions = 0;
  for (auto& r : rows) {
    CHECK(!r.float_net_flag);
    CHECK(r.min_value.lo <= r.min_value.hi);
    if (r.transition) ++transitions;
  }
  // sigma* values 0.9358 and 1.7995 both lie inside [0.8, 2.0]
  CHECK(transitions == 2);
  CHECK(rows.front().argmin == CFSpec::parse("[0; (1)]"));
  CHECK(rows.back().argmin == CFSpec::parse("[0; (3)]"));
}

TEST_CASE("phase scan is deterministic across thread counts") {
  minima::CandidateFamily fam;
  fam.float_grid_points = 500;
  Real lo = Real::from_decimal("1.5", kPrec), hi = Real::from_decimal("2.5", kPrec);
  auto a = minima::phase_scan(lo, hi, 7, fam, 40, 1);
  auto b = minima::phase_scan(lo, hi, 7, fam, 40, 4);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].argmin == b[i].argmin);
    CHECK(a[i].min_value.lo.str(30) == b[i].min_value.lo.str(30));
    CHECK(a[i].transition == b[i].transition);
  }
}

TEST_CASE("certified cylinder floor separates when it should") {
  // at sigma = 1 the minimum over the first cylinder [1/2, 1] stays above
  // B_1(eta_2) = eta_2^{-1}/(1 - eta_2)
  mpfr_prec_t prec = bits_for_digits(50);
  SigmaParam sp = SigmaParam::from_decimal("1", 50);
  CFSpec e2;
  e2.period = {2};
  Real target = eval_periodic_exact(e2, sp).value.hi;
  auto fl = minima::certified_cylinder_floor(1, Real(1L, prec), target, 50);
  CHECK(fl.certified);
  CHECK(fl.floor > target);
}
