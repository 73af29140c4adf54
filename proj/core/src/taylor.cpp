#include "brjuno/taylor.hpp"

#include <algorithm>

#include "brjuno/errors.hpp"

namespace brjuno::tm {

namespace {

const mpq_class kZeroQ(0);

mpq_class mpq_pow(const mpq_class& q, long d) {
  mpq_class out(1);
  for (long i = 0; i < d; ++i) out *= q;
  return out;
}

// Enclosure of x^d over [0, h].
Interval xpow_range(const Params& par, long d) {
  if (d == 0) return Interval(1L, par.prec);
  Interval hp(mpq_pow(par.h, d), par.prec);
  return Interval(Real(0L, par.prec), hp.hi());
}

Interval pow_int(const Interval& x, long n, mpfr_prec_t prec) {
  Interval out(1L, prec);
  for (long i = 0; i < n; ++i) out = out * x;
  return out;
}

Interval poly_range_on(const Model& a, const Interval& X) {
  Interval acc(0L, a.par.prec);
  for (long k = static_cast<long>(a.coef.size()) - 1; k >= 0; --k)
    acc = acc * X + Interval(a.coef[k], a.par.prec);
  return acc;
}

Interval poly_range(const Model& a) {
  Interval X(Real(0L, a.par.prec), Interval(a.par.h, a.par.prec).hi());
  return poly_range_on(a, X);
}

bool is_zero_iv(const Interval& r) { return r.lo().is_zero() && r.hi().is_zero(); }

// Fold an extra remainder contribution x^r * R into the model.
void absorb(Model& m, long r, const Interval& R) {
  if (is_zero_iv(R)) return;
  if (r >= m.rdeg) {
    m.rem = m.rem + R * xpow_range(m.par, r - m.rdeg);
  } else {
    m.rem = m.rem * xpow_range(m.par, m.rdeg - r) + R;
    m.rdeg = r;
  }
}

Model blank(const Params& par) {
  Model m;
  m.par = par;
  m.rdeg = par.order + 1;
  m.rem = Interval(0L, par.prec);
  return m;
}

void check_same_domain(const Model& a, const Model& b) {
  if (a.par.order != b.par.order || a.par.h != b.par.h)
    throw DomainError("taylor models over different parameters");
}

// Truncated series composition p(v) by Horner over models, plus a Lagrange
// remainder Mg * (v/x)^{N+1} * x^{N+1} supplied by the caller.
Model compose(const Model& v, const std::vector<mpq_class>& series, const Interval& Mg) {
  if (v.at(0) != 0) throw DomainError("composition argument must vanish at 0");
  if (v.rdeg < 1) throw DomainError("composition argument remainder order too low");
  const Params& par = v.par;
  long N = par.order;
  Model p = constant(series[N], par);
  for (long k = N - 1; k >= 0; --k) p = add(mul(p, v), constant(series[k], par));
  Interval q = range_quotient(v, 1);
  absorb(p, N + 1, Mg * pow_int(q, N + 1, par.prec));
  return p;
}

}  // namespace

const mpq_class& Model::at(long k) const {
  return k < static_cast<long>(coef.size()) ? coef[k] : kZeroQ;
}

Model constant(const mpq_class& c, const Params& par) {
  Model m = blank(par);
  m.coef = {c};
  return m;
}

Model identity(const Params& par) {
  Model m = blank(par);
  m.coef = {mpq_class(0), mpq_class(1)};
  return m;
}

Model add(const Model& a, const Model& b) {
  check_same_domain(a, b);
  Model m = blank(a.par);
  m.coef.resize(std::max(a.coef.size(), b.coef.size()), mpq_class(0));
  for (std::size_t k = 0; k < m.coef.size(); ++k)
    m.coef[k] = a.at(static_cast<long>(k)) + b.at(static_cast<long>(k));
  absorb(m, a.rdeg, a.rem);
  absorb(m, b.rdeg, b.rem);
  return m;
}

Model neg(const Model& a) { return scale(a, mpq_class(-1)); }

Model sub(const Model& a, const Model& b) { return add(a, neg(b)); }

Model scale(const Model& a, const mpq_class& c) {
  Model m = blank(a.par);
  m.coef = a.coef;
  for (auto& q : m.coef) q *= c;
  absorb(m, a.rdeg, a.rem * Interval(c, a.par.prec));
  return m;
}

Model mul(const Model& a, const Model& b) {
  check_same_domain(a, b);
  const Params& par = a.par;
  long da = static_cast<long>(a.coef.size()) - 1;
  long db = static_cast<long>(b.coef.size()) - 1;
  std::vector<mpq_class> full(std::max(0L, da + db) + 1, mpq_class(0));
  for (long i = 0; i <= da; ++i)
    for (long j = 0; j <= db; ++j) full[i + j] += a.coef[i] * b.coef[j];

  Model m = blank(par);
  long keep = std::min<long>(par.order, static_cast<long>(full.size()) - 1);
  m.coef.assign(full.begin(), full.begin() + keep + 1);

  if (static_cast<long>(full.size()) - 1 > par.order) {
    // overflow polynomial, factored as x^{order+1} * (poly in x)
    Model ov = blank(par);
    ov.coef.assign(full.begin() + par.order + 1, full.end());
    absorb(m, par.order + 1, poly_range(ov));
  }
  absorb(m, b.rdeg, b.rem * poly_range(a));
  absorb(m, a.rdeg, a.rem * poly_range(b));
  absorb(m, a.rdeg + b.rdeg, a.rem * b.rem);
  return m;
}

Model divide_by_power(const Model& a, long d) {
  if (a.rdeg < d) throw DomainError("divide_by_power: remainder order too low");
  for (long k = 0; k < d; ++k)
    if (a.at(k) != 0) throw DomainError("divide_by_power: nonzero low coefficient");
  Model m = blank(a.par);
  if (static_cast<long>(a.coef.size()) > d)
    m.coef.assign(a.coef.begin() + d, a.coef.end());
  else
    m.coef = {mpq_class(0)};
  m.rdeg = a.rdeg - d;
  m.rem = a.rem;
  return m;
}

Interval range_on(const Model& a, const mpq_class& lo, const mpq_class& hi) {
  Interval X = Interval::hull(Interval(lo, a.par.prec), Interval(hi, a.par.prec));
  Interval tail = Interval::hull(Interval(mpq_pow(lo, a.rdeg), a.par.prec),
                                 Interval(mpq_pow(hi, a.rdeg), a.par.prec));
  return poly_range_on(a, X) + tail * a.rem;
}

Interval range(const Model& a) { return range_on(a, mpq_class(0), a.par.h); }

Interval range_quotient(const Model& a, long d) {
  Model q = divide_by_power(a, d);
  return range(q);
}

Model exp_of(const Model& v) {
  const Params& par = v.par;
  long N = par.order;
  std::vector<mpq_class> s(N + 1);
  mpq_class fact(1);
  s[0] = 1;
  for (long k = 1; k <= N; ++k) {
    fact *= k;
    s[k] = mpq_class(1) / fact;
  }
  // |exp^{(N+1)}| / (N+1)! over the range of v
  Interval Mg = exp(range(v)) * Interval(mpq_class(1) / (fact * (N + 1)), par.prec);
  return compose(v, s, Mg);
}

Model log1p_of(const Model& v) {
  const Params& par = v.par;
  long N = par.order;
  std::vector<mpq_class> s(N + 1);
  s[0] = 0;
  for (long k = 1; k <= N; ++k) s[k] = mpq_class((k % 2) ? 1 : -1, k);
  Interval one(1L, par.prec);
  Interval base = one + range(v);  // must stay positive
  Interval Mg = pow_int(one / base, N + 1, par.prec) *
                Interval(mpq_class((N % 2) ? -1 : 1, N + 1), par.prec);
  return compose(v, s, Mg);
}

Model pow1p_of(const Model& v, const mpq_class& alpha) {
  const Params& par = v.par;
  long N = par.order;
  std::vector<mpq_class> s(N + 1);
  s[0] = 1;
  mpq_class run(1);  // binomial(alpha, k)
  for (long k = 1; k <= N; ++k) {
    run *= (alpha - (k - 1));
    run /= k;
    s[k] = run;
  }
  mpq_class cN1 = run * (alpha - N) / (N + 1);  // binomial(alpha, N+1)
  Interval one(1L, par.prec);
  Interval base = one + range(v);
  Interval expo(alpha - (N + 1), par.prec);
  Interval Mg = Interval(cN1, par.prec) * pow(base, expo);
  return compose(v, s, Mg);
}

Model recip_of(const Model& u) {
  const mpq_class& c0 = u.at(0);
  if (c0 == 0) throw DomainError("recip_of: zero constant term");
  Model v = scale(sub(u, constant(c0, u.par)), mpq_class(1) / c0);
  return scale(pow1p_of(v, mpq_class(-1)), mpq_class(1) / c0);
}

}  // namespace brjuno::tm
