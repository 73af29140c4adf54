#include "brjuno/cf.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "brjuno/errors.hpp"

namespace brjuno {

void CFSpec::validate() const {
  for (long a : prefix)
    if (a < 1) throw InvalidSpecError("partial quotients must be >= 1");
  for (long a : period)
    if (a < 1) throw InvalidSpecError("partial quotients must be >= 1");
  if (float_seed) {
    if (!prefix.empty() || !period.empty())
      throw InvalidSpecError("float seed must stand alone");
    return;
  }
  if (period.empty())
    throw InvalidSpecError(
        "prefix-only spec denotes a rational (B_sigma = +inf); give a "
        "periodic tail or a float seed");
}

CFSpec CFSpec::shifted(long n) const {
  validate();
  if (float_seed) throw InvalidSpecError("cannot shift a float-seeded spec exactly");
  CFSpec out;
  long d = static_cast<long>(prefix.size());
  long p = static_cast<long>(period.size());
  if (n < d) {
    out.prefix.assign(prefix.begin() + n, prefix.end());
    out.period = period;
  } else {
    long r = (n - d) % p;
    out.period.reserve(p);
    for (long i = 0; i < p; ++i) out.period.push_back(period[(r + i) % p]);
  }
  return out;
}

namespace {

void skip_ws(const std::string& s, size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

long parse_quotient(const std::string& s, size_t& i) {
  skip_ws(s, i);
  size_t start = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == start) throw InvalidSpecError("expected partial quotient in: " + s);
  return std::stol(s.substr(start, i - start));
}

}  // namespace

CFSpec CFSpec::parse(const std::string& text) {
  CFSpec spec;
  size_t i = 0;
  skip_ws(text, i);
  if (i < text.size() && text[i] != '[') {
    // plain decimal seed
    std::string seed = text.substr(i);
    while (!seed.empty() && std::isspace(static_cast<unsigned char>(seed.back())))
      seed.pop_back();
    spec.float_seed = seed;
    Real v = Real::from_decimal(seed, 64);
    if (!(v > Real(0L, 64)) || !(v < Real(1L, 64)))
      throw InvalidSpecError("float seed must lie in (0,1): " + text);
    return spec;
  }
  ++i;  // '['
  skip_ws(text, i);
  if (parse_quotient(text, i) != 0) throw InvalidSpecError("spec must start with [0; ...");
  skip_ws(text, i);
  if (i >= text.size() || text[i] != ';') throw InvalidSpecError("expected ';' in: " + text);
  ++i;
  bool in_period = false, closed_period = false;
  while (true) {
    skip_ws(text, i);
    if (i >= text.size()) throw InvalidSpecError("unterminated spec: " + text);
    if (text[i] == ']') {
      ++i;
      break;
    }
    if (text[i] == '(') {
      if (in_period || closed_period) throw InvalidSpecError("nested period in: " + text);
      in_period = true;
      ++i;
      continue;
    }
    if (text[i] == ')') {
      if (!in_period) throw InvalidSpecError("stray ')' in: " + text);
      in_period = false;
      closed_period = true;
      ++i;
      continue;
    }
    if (text[i] == ',') {
      ++i;
      continue;
    }
    long a = parse_quotient(text, i);
    (in_period ? spec.period : spec.prefix).push_back(a);
    if (!in_period && closed_period)
      throw InvalidSpecError("quotients after period in: " + text);
  }
  if (in_period) throw InvalidSpecError("unterminated period in: " + text);
  spec.validate();
  return spec;
}

std::string CFSpec::str() const {
  if (float_seed) return *float_seed;
  std::ostringstream os;
  os << "[0;";
  for (size_t i = 0; i < prefix.size(); ++i) os << ' ' << prefix[i] << ',';
  if (!period.empty()) {
    os << " (";
    for (size_t i = 0; i < period.size(); ++i) {
      if (i) os << ", ";
      os << period[i];
    }
    os << ")";
  }
  os << ']';
  return os.str();
}

std::pair<long, Real> gauss_step(const Real& x) {
  mpfr_prec_t prec = x.prec();
  Real zero(0L, prec), one(1L, prec);
  if (!(x > zero) || !(x < one)) throw DomainError("gauss_step: x must lie in (0,1)");
  Real inv = one / x;
  Real fl = floor(inv);
  long a = fl.to_long();
  if (a > kQuotientCap)
    throw QuotientCapError("partial quotient exceeds cap (input nearly rational)");
  Real rest = inv - fl;
  return {a, rest};
}

Real QuadraticValue::root(mpfr_prec_t prec) const {
  Real A(a, prec), B(b, prec), C(c, prec);
  Real disc = B * B - Real(4L, prec) * A * C;
  if (!(disc > Real(0L, prec))) throw InvalidSpecError("quadratic has no real root");
  Real sq = sqrt(disc);
  Real two_a = Real(2L, prec) * A;
  Real r1 = (-B + sq) / two_a;
  Real r2 = (-B - sq) / two_a;
  Real blo(lo, prec), bhi(hi, prec);
  bool ok1 = r1 > blo && r1 < bhi;
  bool ok2 = r2 > blo && r2 < bhi;
  if (ok1 == ok2)
    throw InvalidSpecError("quadratic does not have exactly one root in its bracket");
  return ok1 ? r1 : r2;
}

QuadraticValue eta(long n, mpfr_prec_t prec) {
  if (n < 1) throw DomainError("eta: n must be >= 1");
  QuadraticValue qv;
  qv.a = 1;
  qv.b = n;
  qv.c = -1;
  qv.approx = qv.root(prec);
  return qv;
}

namespace {

// Convergents of a finite digit list: returns p_k, q_k for k = len and len-1.
void convergents(const std::vector<long>& digits, mpz_class& p1, mpz_class& q1,
                 mpz_class& p0, mpz_class& q0) {
  // [0; a1, a2, ...] seeds: p_0 = 0, p_{-1} = 1; q_0 = 1, q_{-1} = 0
  mpz_class pm1 = 0, pm2 = 1, qm1 = 1, qm2 = 0;
  for (long a : digits) {
    mpz_class pn = a * pm1 + pm2;
    mpz_class qn = a * qm1 + qm2;
    pm2 = pm1;
    pm1 = pn;
    qm2 = qm1;
    qm1 = qn;
  }
  p1 = pm1;
  q1 = qm1;
  p0 = pm2;
  q0 = qm2;
}

}  // namespace

QuadraticValue quadratic_from_periodic(const CFSpec& spec, mpfr_prec_t prec) {
  spec.validate();
  if (!spec.is_periodic()) throw InvalidSpecError("quadratic_from_periodic: spec has no period");

  // Tail t = [0; overline(period)]: t = (pb1 + pb0 t)/(qb1 + qb0 t).
  mpz_class pb1, qb1, pb0, qb0;
  convergents(spec.period, pb1, qb1, pb0, qb0);
  // qb0 t^2 + (qb1 - pb0) t - pb1 = 0
  mpz_class A = qb0, B = qb1 - pb0, C = -pb1;

  if (!spec.prefix.empty()) {
    // x = (P1 + P0 t)/(Q1 + Q0 t)  =>  t = (P1 - Q1 x)/(Q0 x - P0)
    mpz_class P1, Q1, P0, Q0;
    convergents(spec.prefix, P1, Q1, P0, Q0);
    // Substitute into A t^2 + B t + C = 0, multiply by (Q0 x - P0)^2:
    // A(P1 - Q1 x)^2 + B(P1 - Q1 x)(Q0 x - P0) + C(Q0 x - P0)^2 = 0
    mpz_class a2 = A * Q1 * Q1 - B * Q1 * Q0 + C * Q0 * Q0;
    mpz_class b2 = -2 * A * P1 * Q1 + B * (P1 * Q0 + Q1 * P0) - 2 * C * P0 * Q0;
    mpz_class c2 = A * P1 * P1 - B * P1 * P0 + C * P0 * P0;
    A = a2;
    B = b2;
    C = c2;
  }
  mpz_class g = gcd(gcd(A, B), C);
  if (g != 0) {
    A /= g;
    B /= g;
    C /= g;
  }
  if (A < 0) {
    A = -A;
    B = -B;
    C = -C;
  }
  QuadraticValue qv;
  qv.a = A;
  qv.b = B;
  qv.c = C;
  if (!spec.prefix.empty()) {
    // x lies strictly between M(0) = P1/Q1 and M(1) = (P1+P0)/(Q1+Q0); the
    // conjugate corresponds to a tail outside (0,1), hence lies outside.
    mpz_class P1, Q1, P0, Q0;
    convergents(spec.prefix, P1, Q1, P0, Q0);
    mpq_class e0(P1, Q1), e1(P1 + P0, Q1 + Q0);
    e0.canonicalize();
    e1.canonicalize();
    qv.lo = std::min(e0, e1);
    qv.hi = std::max(e0, e1);
  }
  qv.approx = qv.root(prec);
  return qv;
}

namespace {

long digit_at(const CFSpec& spec, long n) {  // a_n, 1-based
  long d = static_cast<long>(spec.prefix.size());
  if (n <= d) return spec.prefix[n - 1];
  long p = static_cast<long>(spec.period.size());
  return spec.period[(n - 1 - d) % p];
}

ConvergentTable expand_exact(const CFSpec& spec, long depth, mpfr_prec_t prec) {
  ConvergentTable t;
  t.depth = depth;
  t.exact = true;
  long d = static_cast<long>(spec.prefix.size());
  long p = static_cast<long>(spec.period.size());

  t.a.assign(1, 0);
  for (long n = 1; n <= depth; ++n) t.a.push_back(digit_at(spec, n));

  t.p.resize(depth + 3);
  t.q.resize(depth + 3);
  t.p[0] = 0;  // p_{-2}
  t.p[1] = 1;  // p_{-1}
  t.q[0] = 1;  // q_{-2}
  t.q[1] = 0;  // q_{-1}
  for (long n = 0; n <= depth; ++n) {
    if (n == 0) {
      t.p[2] = 0;  // p_0 = a_0 = 0
      t.q[2] = 1;
    } else {
      t.p[n + 2] = t.a[n] * t.p[n + 1] + t.p[n];
      t.q[n + 2] = t.a[n] * t.q[n + 1] + t.q[n];
    }
  }

  // Gauss iterates: exact quadratic roots once the orbit is inside the
  // periodic tail, then backward Mobius steps x_n = 1/(a_{n+1} + x_{n+1})
  // through the prefix (backward iteration is contracting).
  t.x.assign(depth + 1, Real(prec));
  long anchor = std::min<long>(depth, d);
  if (anchor < d) {
    // whole table sits inside the prefix; anchor one step past the end
    Real next = quadratic_from_periodic(spec.shifted(depth + 1), prec).approx;
    for (long n = depth; n >= 0; --n) {
      next = Real(1L, prec) / (Real(digit_at(spec, n + 1), prec) + next);
      t.x[n] = next;
    }
  } else {
    for (long n = d; n <= depth; ++n)
      t.x[n] = quadratic_from_periodic(spec.shifted(n), prec).approx;
    Real next = (d <= depth) ? t.x[d] : Real(prec);
    for (long n = d - 1; n >= 0; --n) {
      next = Real(1L, prec) / (Real(t.a[n + 1], prec) + next);
      t.x[n] = next;
    }
  }

  t.beta.assign(depth + 2, Real(prec));
  t.beta[0] = Real(1L, prec);  // beta_{-1}
  for (long n = 0; n <= depth; ++n) t.beta[n + 1] = t.beta[n] * t.x[n];
  return t;
}

ConvergentTable expand_float(const CFSpec& spec, long depth, mpfr_prec_t prec) {
  ConvergentTable t;
  t.exact = false;
  Real x0 = Real::from_decimal(*spec.float_seed, prec);
  if (!(x0 > Real(0L, prec)) || !(x0 < Real(1L, prec)))
    throw InvalidSpecError("float seed must lie in (0,1)");

  t.a.assign(1, 0);
  t.p.resize(3);
  t.q.resize(3);
  t.p[0] = 0;
  t.p[1] = 1;
  t.p[2] = 0;
  t.q[0] = 1;
  t.q[1] = 0;
  t.q[2] = 1;
  t.x.push_back(x0);

  double eps = std::ldexp(1.0, static_cast<int>(-prec) + 1);
  const double budget = std::ldexp(1.0, -20);
  long reached = 0;
  Real cur = x0;
  for (long n = 1; n <= depth; ++n) {
    double xd = cur.to_double();
    double next_eps = eps / (xd * xd) + std::ldexp(1.0, static_cast<int>(-prec) + 1);
    if (next_eps > budget) {
      t.truncated = true;
      break;
    }
    auto [a, rest] = gauss_step(cur);
    if (rest.is_zero())
      throw RationalInputError("float seed terminated: rational input at depth " +
                               std::to_string(n));
    eps = next_eps;
    cur = rest;
    t.a.push_back(a);
    t.p.push_back(a * t.p[n + 1] + t.p[n]);
    t.q.push_back(a * t.q[n + 1] + t.q[n]);
    t.x.push_back(cur);
    reached = n;
  }
  t.depth = reached;
  t.beta.assign(reached + 2, Real(prec));
  t.beta[0] = Real(1L, prec);
  for (long n = 0; n <= reached; ++n) t.beta[n + 1] = t.beta[n] * t.x[n];
  return t;
}

}  // namespace

ConvergentTable expand(const CFSpec& spec, long depth, mpfr_prec_t prec) {
  if (depth < 0) throw DomainError("expand: depth must be >= 0");
  spec.validate();
  for (long a : spec.prefix)
    if (a > kQuotientCap) throw QuotientCapError("partial quotient exceeds cap");
  for (long a : spec.period)
    if (a > kQuotientCap) throw QuotientCapError("partial quotient exceeds cap");
  return spec.is_exact() ? expand_exact(spec, depth, prec) : expand_float(spec, depth, prec);
}

double growth_exponent(const ConvergentTable& table) {
  if (table.depth < 3) throw DomainError("growth_exponent: depth must be >= 3");
  long K = table.depth;
  long start = std::max<long>(1, (3 * K) / 4);
  double worst = 0.0;
  for (long n = start; n < K; ++n) {
    if (table.qq(n) <= 1) continue;
    Real lq1(table.qq(n + 1), 64), lq(table.qq(n), 64);
    double v = (log(lq1) / log(lq)).to_double() - 1.0;
    if (v > worst) worst = v;
  }
  return worst;
}

}  // namespace brjuno
