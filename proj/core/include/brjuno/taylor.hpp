#pragma once

#include <gmpxx.h>

#include <vector>

#include "brjuno/interval.hpp"

namespace brjuno::tm {

struct Params {
  long order = 24;
  mpq_class h;  // domain is [0, h]
  mpfr_prec_t prec = bits_for_digits(kDefaultDigits);
};

/// Polynomial with exact rational coefficients plus a factored interval
/// remainder: f(x) ∈ Σ c_k x^k + x^rdeg · rem for all x ∈ [0, h].  Keeping
/// the coefficients rational makes leading-order cancellations exact, so
/// models can be divided by powers of x without blowup.
struct Model {
  Params par;
  std::vector<mpq_class> coef;  // degrees 0..order (may be shorter)
  long rdeg = 0;
  Interval rem;

  Model() : rem(Interval()) {}
  const mpq_class& at(long k) const;
};

Model constant(const mpq_class& c, const Params& par);
Model identity(const Params& par);  // the model of x itself

Model add(const Model& a, const Model& b);
Model sub(const Model& a, const Model& b);
Model neg(const Model& a);
Model scale(const Model& a, const mpq_class& c);
Model mul(const Model& a, const Model& b);

/// Exact division by x^d: throws DomainError unless the low d coefficients
/// vanish identically and rdeg >= d.
Model divide_by_power(const Model& a, long d);

/// Enclosure of the model over [0, h] (interval Horner; deliberately coarse
/// on wide pieces, callers subdivide).
Interval range(const Model& a);
/// Enclosure of a/x^d over [0, h]; same exactness requirement as division.
Interval range_quotient(const Model& a, long d);
/// Enclosure over a subinterval [lo, hi] of [0, h].
Interval range_on(const Model& a, const mpq_class& lo, const mpq_class& hi);

/// Compositions with exact rational series coefficients; the argument must
/// have zero constant term (checked).  Remainders are Lagrange bounds.
Model exp_of(const Model& v);
Model log1p_of(const Model& v);                       // log(1 + v)
Model pow1p_of(const Model& v, const mpq_class& alpha);  // (1 + v)^alpha
/// 1/u for u whose constant term is a nonzero rational.
Model recip_of(const Model& u);

}  // namespace brjuno::tm
