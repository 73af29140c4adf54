#include <doctest.h>

#include <random>

#include "brjuno/certified.hpp"

using namespace brjuno;
using namespace brjuno::certified;

namespace {
const mpfr_prec_t kPrec = bits_for_digits(60);

Interval pt(double x) { return Interval(Real(x, kPrec)); }
}  // namespace

TEST_CASE("w at reference points") {
  Interval w01 = w_fn(Interval(mpq_class(1, 10), kPrec));
  Real ref = Real::from_decimal(
      "0.00041111489348681761802180670341751021142107399154702249338973",
      bits_for_digits(80));
  CHECK(abs(w01.mid() - ref) < Real(1e-50, kPrec));
  CHECK(w01.width() < Real(1e-40, kPrec));
  // w(1) = gamma(1) - beta(1): gamma(1) = 2 + 2 = 4, r(1) = (sqrt(2)-1)/2,
  // beta(1) = 2 (1 + r) / (1 - 2r)
  Interval w1 = w_fn(pt(1.0));
  Real r1 = (sqrt(Real(2L, kPrec)) - Real(1L, kPrec)) / Real(2L, kPrec);
  Real beta1 = Real(2L, kPrec) * (Real(1L, kPrec) + r1) /
               (Real(1L, kPrec) - Real(2L, kPrec) * r1);
  CHECK(w1.contains(Real(4L, kPrec) - beta1));
}

TEST_CASE("w' agrees with central differences") {
  std::mt19937 rng(55);
  std::uniform_real_distribution<double> d(0.02, 0.95);
  Real h(1e-8, bits_for_digits(80));
  for (int i = 0; i < 10; ++i) {
    double x = d(rng);
    Interval wp = w_prime_fn(pt(x));
    Real xr(x, bits_for_digits(80));
    Real num = (w_fn(Interval(xr + h)).mid() - w_fn(Interval(xr - h)).mid()) /
               (Real(2L, bits_for_digits(80)) * h);
    Real rel = abs(wp.mid() - num) / abs(num);
    CHECK(rel < Real(1e-6, kPrec));
  }
}

TEST_CASE("w ~ x^3/2 near zero") {
  for (long n = 100; n <= 800; n *= 2) {
    mpq_class xq(1, n);
    Interval x(xq, kPrec);
    Interval ratio = w_fn(x) / (x * x * x);
    CHECK(ratio.lo() > Real(0.4, kPrec));
    CHECK(ratio.hi() < Real(0.6, kPrec));
  }
}

TEST_CASE("contraction certificate") {
  auto cert = verify_contraction(16384, 60);
  CHECK(cert.passed);
  CHECK(cert.maps_into);
  CHECK(!cert.inconclusive);
  CHECK(cert.max_fprime <= Real(0.5, kPrec));
  // pieces tile [0, 1/10] without gaps
  REQUIRE(!cert.pieces.empty());
  CHECK(cert.pieces.front().x.lo().sign() == 0);
  for (size_t i = 1; i < cert.pieces.size(); ++i)
    CHECK(cert.pieces[i].x.lo() <= cert.pieces[i - 1].x.hi());
}

TEST_CASE("contraction with a tiny budget is inconclusive, not false") {
  auto cert = verify_contraction(1, 60);
  CHECK(cert.inconclusive);
  CHECK(!cert.passed);
}

TEST_CASE("margins g(xi_n) - B_n(eta_{n+1}) are positive and ~ n^-3/2") {
  auto cert = check_w_positive(2, 40, 40);
  CHECK(cert.passed);
  for (auto& row : cert.rows) {
    CHECK(row.pass);
    CHECK(row.margin.lo().sign() > 0);
    if (row.n >= 20) {
      Real n3(row.n, kPrec);
      n3 = n3 * n3 * n3;
      Real scaled = row.margin.mid() * n3;
      CHECK(scaled > Real(0.4, kPrec));
      CHECK(scaled < Real(0.7, kPrec));
    }
  }
}

TEST_CASE("psi is certified negative on (0, 1]") {
  auto cert = check_psi_negative(50);
  CHECK(cert.passed);
  CHECK(cert.max_value.sign() < 0);
  // spot check the definition
  Interval x = pt(0.5);
  Interval one(1L, kPrec);
  Interval direct = one + x + x * x - pow(one + x, one + x);
  Interval via = psi_fn(x);
  CHECK(Interval::hull(direct, via).width() <
        direct.width() + via.width() + Real(1e-30, kPrec));
  CHECK(via.hi().sign() < 0);
}
