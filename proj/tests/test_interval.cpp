#include <doctest.h>

#include <random>

#include "brjuno/errors.hpp"
#include "brjuno/interval.hpp"

using namespace brjuno;

namespace {
const mpfr_prec_t kPrec = bits_for_digits(40);

Real rnd_real(std::mt19937& rng) {
  std::uniform_real_distribution<double> d(-10.0, 10.0);
  return Real(d(rng), kPrec);
}
}  // namespace

TEST_CASE("arithmetic soundness on random points") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> pad(0.0, 0.5);
  long checked = 0;
  for (int trial = 0; trial < 20000 && checked < 100000; ++trial) {
    Real a = rnd_real(rng), b = rnd_real(rng);
    Interval A(a - Real(pad(rng), kPrec), a + Real(pad(rng), kPrec));
    Interval B(b - Real(pad(rng), kPrec), b + Real(pad(rng), kPrec));
    CHECK((A + B).contains(a + b));
    CHECK((A - B).contains(a - b));
    CHECK((A * B).contains(a * b));
    checked += 3;
    if (!B.contains_zero()) {
      CHECK((A / B).contains(a / b));
      ++checked;
    }
    if (A.lo().sign() > 0) {
      CHECK(sqrt(A).contains(sqrt(a)));
      CHECK(log(A).contains(log(a)));
      CHECK(pow(A, B).contains(pow(a, b)));
      checked += 3;
    }
    CHECK(exp(Interval(a) - Interval(b)).contains(exp(a - b)));
    CHECK(abs(A).contains(abs(a)));
    checked += 2;
  }
  CHECK(checked >= 100000);
}

TEST_CASE("inclusion monotonicity") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Real a = rnd_real(rng), b = rnd_real(rng);
    Interval inner(a, a + Real(0.25, kPrec));
    Interval outer(a - Real(0.25, kPrec), a + Real(0.5, kPrec));
    Interval C(b, b + Real(0.1, kPrec));
    CHECK((inner + C).subset_of(outer + C));
    CHECK((inner * C).subset_of(outer * C));
    CHECK((inner - C).subset_of(outer - C));
  }
}

TEST_CASE("division by an interval containing zero throws") {
  Interval one(1L, kPrec);
  Interval z(Real(-1L, kPrec), Real(1L, kPrec));
  CHECK_THROWS_AS(one / z, DomainError);
}

TEST_CASE("rational constructor encloses tightly") {
  mpq_class q(1, 3);
  Interval I(q, kPrec);
  CHECK(I.lo() < I.hi());
  CHECK(I.width() < Real(1e-30, kPrec));
  Real third = Real(1L, bits_for_digits(80)) / Real(3L, bits_for_digits(80));
  CHECK(I.contains(third));
}

TEST_CASE("hull and subset") {
  Interval A(Real(0L, kPrec), Real(1L, kPrec));
  Interval B(Real(2L, kPrec), Real(3L, kPrec));
  Interval H = Interval::hull(A, B);
  CHECK(A.subset_of(H));
  CHECK(B.subset_of(H));
  CHECK(H.contains(Real(1.5, kPrec)));
}
