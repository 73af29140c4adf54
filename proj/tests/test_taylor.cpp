#include <doctest.h>

#include "brjuno/errors.hpp"
#include "brjuno/taylor.hpp"

using namespace brjuno;
using namespace brjuno::tm;

namespace {

Params small_params() {
  Params p;
  p.order = 12;
  p.h = mpq_class(1, 10);
  p.prec = bits_for_digits(50);
  return p;
}

// Point containment: evaluate the polynomial part at a rational x and check
// the true value lies inside coef(x) + x^rdeg * rem.
bool model_contains(const Model& m, const mpq_class& xq, const Real& truth) {
  mpfr_prec_t prec = m.par.prec;
  Interval x(xq, prec);
  Interval acc(0L, prec);
  for (long k = static_cast<long>(m.coef.size()) - 1; k >= 0; --k)
    acc = acc * x + Interval(m.coef[k], prec);
  Interval xr(1L, prec);
  for (long i = 0; i < m.rdeg; ++i) xr = xr * x;
  Interval total = acc + xr * m.rem;
  return total.contains(truth);
}

}  // namespace

TEST_CASE("exp model encloses exp(x) - checked pointwise") {
  Params par = small_params();
  Model ex = exp_of(identity(par));
  for (int num = 1; num <= 9; num += 2) {
    mpq_class xq(num, 100);
    Real truth = exp(Real(xq, par.prec));
    CHECK(model_contains(ex, xq, truth));
  }
}

TEST_CASE("log1p and pow1p models enclose their functions") {
  Params par = small_params();
  Model lg = log1p_of(identity(par));
  Model pw = pow1p_of(identity(par), mpq_class(1, 2));
  mpfr_prec_t prec = par.prec;
  for (int num = 1; num <= 9; num += 2) {
    mpq_class xq(num, 100);
    Real x(xq, prec);
    CHECK(model_contains(lg, xq, log(Real(1L, prec) + x)));
    CHECK(model_contains(pw, xq, sqrt(Real(1L, prec) + x)));
  }
}

TEST_CASE("recip model encloses 1/(c + x)") {
  Params par = small_params();
  Model u = add(constant(mpq_class(2), par), identity(par));
  Model rc = recip_of(u);
  for (int num = 1; num <= 9; num += 2) {
    mpq_class xq(num, 100);
    Real truth = Real(1L, par.prec) / Real(mpq_class(2) + xq, par.prec);
    CHECK(model_contains(rc, xq, truth));
  }
}

TEST_CASE("arithmetic keeps rational coefficients exact") {
  Params par = small_params();
  Model x = identity(par);
  // (1+x)^2 - 1 - 2x = x^2 exactly
  Model sq = sub(sub(mul(add(constant(1, par), x), add(constant(1, par), x)),
                     constant(1, par)),
                 scale(x, 2));
  CHECK(sq.at(0) == 0);
  CHECK(sq.at(1) == 0);
  CHECK(sq.at(2) == 1);
  // dividing by x^2 must now be exact
  Model one = divide_by_power(sq, 2);
  CHECK(one.at(0) == 1);
  Interval r = range(one);
  CHECK(r.contains(Real(1L, par.prec)));
}

TEST_CASE("divide_by_power rejects nonvanishing low coefficients") {
  Params par = small_params();
  CHECK_THROWS_AS(divide_by_power(constant(1, par), 1), DomainError);
}

TEST_CASE("range_on refines the global range") {
  Params par = small_params();
  Model ex = exp_of(identity(par));
  Interval full = range(ex);
  Interval left = range_on(ex, mpq_class(0), mpq_class(1, 100));
  CHECK(left.subset_of(full));
  CHECK(left.width() < full.width());
}

TEST_CASE("leading cancellation: exp(x) - 1 - x over x^2") {
  Params par = small_params();
  Model v = sub(sub(exp_of(identity(par)), constant(1, par)), identity(par));
  CHECK(v.at(0) == 0);
  CHECK(v.at(1) == 0);
  Interval q = range_quotient(v, 2);
  // (exp(x)-1-x)/x^2 lies in [1/2, 0.6] on [0, 1/10]
  CHECK(q.lo() > Real(0.49, par.prec));
  CHECK(q.hi() < Real(0.61, par.prec));
}
