#include "brjuno/interval.hpp"

#include <algorithm>

#include "brjuno/errors.hpp"

namespace brjuno {

Interval::Interval(const Real& lo, const Real& hi) : lo_(lo), hi_(hi) {
  if (!(lo <= hi)) throw DomainError("interval endpoints out of order");
}

Interval::Interval(const mpq_class& q, mpfr_prec_t prec) : lo_(prec), hi_(prec) {
  mpfr_set_q(lo_.raw(), q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_.raw(), q.get_mpq_t(), MPFR_RNDU);
}

Real Interval::width() const {
  Real w(prec());
  mpfr_sub(w.raw(), hi_.raw(), lo_.raw(), MPFR_RNDU);
  return w;
}

Real Interval::mid() const {
  Real m(prec());
  mpfr_add(m.raw(), lo_.raw(), hi_.raw(), MPFR_RNDN);
  mpfr_div_2ui(m.raw(), m.raw(), 1, MPFR_RNDN);
  return m;
}

namespace {
mpfr_prec_t join(const Interval& a, const Interval& b) {
  return std::max(a.prec(), b.prec());
}
}  // namespace

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(join(a, b));
  Real lo(r.prec()), hi(r.prec());
  mpfr_add(lo.raw(), a.lo().raw(), b.lo().raw(), MPFR_RNDD);
  mpfr_add(hi.raw(), a.hi().raw(), b.hi().raw(), MPFR_RNDU);
  return Interval(lo, hi);
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(join(a, b));
  Real lo(r.prec()), hi(r.prec());
  mpfr_sub(lo.raw(), a.lo().raw(), b.hi().raw(), MPFR_RNDD);
  mpfr_sub(hi.raw(), a.hi().raw(), b.lo().raw(), MPFR_RNDU);
  return Interval(lo, hi);
}

Interval operator-(const Interval& a) {
  Real lo(a.prec()), hi(a.prec());
  mpfr_neg(lo.raw(), a.hi().raw(), MPFR_RNDD);
  mpfr_neg(hi.raw(), a.lo().raw(), MPFR_RNDU);
  return Interval(lo, hi);
}

Interval operator*(const Interval& a, const Interval& b) {
  mpfr_prec_t p = join(a, b);
  // min/max over the four endpoint products, each rounded both ways.
  const mpfr_srcptr as[2] = {a.lo().raw(), a.hi().raw()};
  const mpfr_srcptr bs[2] = {b.lo().raw(), b.hi().raw()};
  Real lo(p), hi(p), t(p);
  bool first = true;
  for (auto av : as)
    for (auto bv : bs) {
      mpfr_mul(t.raw(), av, bv, MPFR_RNDD);
      if (first || t < lo) mpfr_set(lo.raw(), t.raw(), MPFR_RNDD);
      mpfr_mul(t.raw(), av, bv, MPFR_RNDU);
      if (first || t > hi) mpfr_set(hi.raw(), t.raw(), MPFR_RNDU);
      first = false;
    }
  return Interval(lo, hi);
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw DomainError("interval division by interval containing zero");
  mpfr_prec_t p = join(a, b);
  const mpfr_srcptr as[2] = {a.lo().raw(), a.hi().raw()};
  const mpfr_srcptr bs[2] = {b.lo().raw(), b.hi().raw()};
  Real lo(p), hi(p), t(p);
  bool first = true;
  for (auto av : as)
    for (auto bv : bs) {
      mpfr_div(t.raw(), av, bv, MPFR_RNDD);
      if (first || t < lo) mpfr_set(lo.raw(), t.raw(), MPFR_RNDD);
      mpfr_div(t.raw(), av, bv, MPFR_RNDU);
      if (first || t > hi) mpfr_set(hi.raw(), t.raw(), MPFR_RNDU);
      first = false;
    }
  return Interval(lo, hi);
}

Interval Interval::hull(const Interval& a, const Interval& b) {
  Real lo = (a.lo() <= b.lo()) ? a.lo() : b.lo();
  Real hi = (a.hi() >= b.hi()) ? a.hi() : b.hi();
  return Interval(lo, hi);
}

Interval sqrt(const Interval& x) {
  if (x.lo().sign() < 0) throw DomainError("sqrt of interval with negative part");
  Real lo(x.prec()), hi(x.prec());
  mpfr_sqrt(lo.raw(), x.lo().raw(), MPFR_RNDD);
  mpfr_sqrt(hi.raw(), x.hi().raw(), MPFR_RNDU);
  return Interval(lo, hi);
}

Interval log(const Interval& x) {
  if (x.lo().sign() <= 0) throw DomainError("log of interval touching (-inf, 0]");
  Real lo(x.prec()), hi(x.prec());
  mpfr_log(lo.raw(), x.lo().raw(), MPFR_RNDD);
  mpfr_log(hi.raw(), x.hi().raw(), MPFR_RNDU);
  return Interval(lo, hi);
}

Interval exp(const Interval& x) {
  Real lo(x.prec()), hi(x.prec());
  mpfr_exp(lo.raw(), x.lo().raw(), MPFR_RNDD);
  mpfr_exp(hi.raw(), x.hi().raw(), MPFR_RNDU);
  return Interval(lo, hi);
}

Interval abs(const Interval& x) {
  if (x.lo().sign() >= 0) return x;
  if (x.hi().sign() <= 0) return -x;
  Real zero(0L, x.prec());
  Real hi = (abs(x.lo()) >= x.hi()) ? abs(x.lo()) : x.hi();
  return Interval(zero, hi);
}

Interval pow(const Interval& x, const Interval& y) {
  return exp(y * log(x));
}

}  // namespace brjuno
