#pragma once

#include <gmpxx.h>

#include "brjuno/real.hpp"

namespace brjuno {

/// Closed interval [lo, hi] with outward-rounded endpoints (mpfr directed
/// rounding).  Every operation encloses the exact image of its arguments.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = bits_for_digits(kDefaultDigits))
      : lo_(prec), hi_(prec) {}
  Interval(const Real& point) : lo_(point), hi_(point) {}
  Interval(const Real& lo, const Real& hi);
  Interval(long x, mpfr_prec_t prec) : lo_(x, prec), hi_(x, prec) {}
  /// Tight outward enclosure of an exact rational.
  Interval(const mpq_class& q, mpfr_prec_t prec);

  const Real& lo() const { return lo_; }
  const Real& hi() const { return hi_; }
  mpfr_prec_t prec() const { return lo_.prec(); }

  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  bool contains(const Real& x) const { return lo_ <= x && x <= hi_; }
  bool subset_of(const Interval& o) const { return o.lo_ <= lo_ && hi_ <= o.hi_; }
  Real width() const;  // rounded up
  Real mid() const;

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  /// Throws DomainError if b contains zero.
  friend Interval operator/(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a);

  static Interval hull(const Interval& a, const Interval& b);

 private:
  Real lo_, hi_;
};

Interval sqrt(const Interval& x);
Interval log(const Interval& x);  // requires x.lo > 0
Interval exp(const Interval& x);
Interval abs(const Interval& x);
/// x^y for x.lo > 0, via exp(y log x).
Interval pow(const Interval& x, const Interval& y);

}  // namespace brjuno
