#include "brjuno/real.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

#include "brjuno/errors.hpp"

namespace brjuno {

Real Real::from_decimal(const std::string& s, mpfr_prec_t prec) {
  Real r(prec);
  if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0 && mpfr_nan_p(r.v_)) {
    throw InvalidSpecError("not a decimal number: " + s);
  }
  return r;
}

std::string Real::str(long digits) const {
  char* buf = nullptr;
  // %Rg with explicit significant digits; mpfr printing is locale-independent.
  int n = mpfr_asprintf(&buf, "%.*Rg", static_cast<int>(digits), v_);
  if (n < 0) throw Error("mpfr_asprintf failed");
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

namespace {
mpfr_prec_t join(const Real& a, const Real& b) { return std::max(a.prec(), b.prec()); }
}  // namespace

Real operator+(const Real& a, const Real& b) {
  Real r(join(a, b));
  mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
Real operator-(const Real& a, const Real& b) {
  Real r(join(a, b));
  mpfr_sub(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, const Real& b) {
  Real r(join(a, b));
  mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
Real operator/(const Real& a, const Real& b) {
  Real r(join(a, b));
  mpfr_div(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
Real operator-(const Real& a) {
  Real r(a.prec());
  mpfr_neg(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

Real sqrt(const Real& x) {
  Real r(x.prec());
  mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}
Real log(const Real& x) {
  Real r(x.prec());
  mpfr_log(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}
Real exp(const Real& x) {
  Real r(x.prec());
  mpfr_exp(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}
Real abs(const Real& x) {
  Real r(x.prec());
  mpfr_abs(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}
Real floor(const Real& x) {
  Real r(x.prec());
  mpfr_floor(r.raw(), x.raw());
  return r;
}
Real pow(const Real& x, const Real& y) {
  Real r(std::max(x.prec(), y.prec()));
  mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

}  // namespace brjuno
