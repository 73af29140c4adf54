#include "brjuno/certified.hpp"

#include <algorithm>

#include "brjuno/errors.hpp"
#include "brjuno/taylor.hpp"

namespace brjuno::certified {

namespace {

struct Parts {
  Interval one, u, s, r, dx;  // dx = (x - (1+x)r)/x, the stabilized denominator
  Interval a1, a2, a3, a4, a5;
};

Parts eval_parts(const Interval& x) {
  mpfr_prec_t prec = x.prec();
  Interval one(1L, prec), two(2L, prec);
  Interval x2 = x * x;
  Interval u = two * x / (one + x);
  Interval s = sqrt(one + u * u);
  Interval r = u * u / (two * (s + one));
  Interval dx = one - u / (s + one);
  Parts p{one, u, s, r, dx, Interval(prec), Interval(prec), Interval(prec),
          Interval(prec), Interval(prec)};
  p.a1 = pow(one + x2, x);
  p.a2 = (x + x2) / (one + x2);
  p.a3 = pow(one + x, x);
  p.a4 = pow(one + r, x);
  p.a5 = one / dx;
  if (dx.contains_zero()) throw DomainError("beta denominator encloses zero");
  return p;
}

}  // namespace

Interval r_fn(const Interval& x) { return eval_parts(x).r; }

Interval gamma_fn(const Interval& x) {
  Parts p = eval_parts(x);
  return p.a1 + p.a2 * p.a3;
}

Interval beta_fn(const Interval& x) {
  Parts p = eval_parts(x);
  return p.a3 * p.a4 * p.a5;
}

Interval w_fn(const Interval& x) {
  Parts p = eval_parts(x);
  return p.a1 + p.a2 * p.a3 - p.a3 * p.a4 * p.a5;
}

Interval gamma_prime_fn(const Interval& x) {
  Parts p = eval_parts(x);
  mpfr_prec_t prec = x.prec();
  Interval one(1L, prec), two(2L, prec);
  Interval x2 = x * x;
  Interval a1p = p.a1 * (log(one + x2) + two * x2 / (one + x2));
  Interval a2p = (one + two * x - x2) / ((one + x2) * (one + x2));
  Interval a3p = p.a3 * (log(one + x) + x / (one + x));
  return a1p + a2p * p.a3 + p.a2 * a3p;
}

Interval beta_prime_fn(const Interval& x) {
  Parts p = eval_parts(x);
  mpfr_prec_t prec = x.prec();
  Interval one(1L, prec), two(2L, prec);
  Interval up = two / ((one + x) * (one + x));
  Interval rp = p.u * up / (two * p.s);
  Interval a3p = p.a3 * (log(one + x) + x / (one + x));
  Interval a4p = p.a4 * (log(one + p.r) + x * rp / (one + p.r));
  // x - (1+x)r differentiates to (x(1+x)r' - r)/x after the x/D quotient rule
  Interval num = x * (one + x) * rp - p.r;
  Interval a5p = num / (x * x * p.dx * p.dx);
  return a3p * p.a4 * p.a5 + p.a3 * a4p * p.a5 + p.a3 * p.a4 * a5p;
}

Interval w_prime_fn(const Interval& x) { return gamma_prime_fn(x) - beta_prime_fn(x); }

// --- Taylor models on [0, 1/10] ----------------------------------------------

namespace {

struct ModelPack {
  tm::Model w, wp, fprime, q3, z;  // q3 = w/x^3, z = (1/2 - w/x^3)/x
};

ModelPack build_models(long order, mpfr_prec_t prec) {
  using namespace tm;
  Params par{order, mpq_class(1, 10), prec};
  Model xm = identity(par);
  Model one = constant(mpq_class(1), par);
  Model x2 = mul(xm, xm);

  Model u = mul(scale(xm, mpq_class(2)), recip_of(add(one, xm)));
  Model u2 = mul(u, u);
  Model s = pow1p_of(u2, mpq_class(1, 2));
  Model sp1_inv = recip_of(add(s, one));
  Model r = scale(mul(u2, sp1_inv), mpq_class(1, 2));
  Model dx = sub(one, mul(u, sp1_inv));

  Model l_x = log1p_of(xm);
  Model l_x2 = log1p_of(x2);
  Model l_r = log1p_of(r);
  Model a1 = exp_of(mul(xm, l_x2));
  Model a2 = mul(add(xm, x2), recip_of(add(one, x2)));
  Model a3 = exp_of(mul(xm, l_x));
  Model a4 = exp_of(mul(xm, l_r));
  Model a5 = recip_of(dx);

  Model gamma = add(a1, mul(a2, a3));
  Model beta = mul(a3, mul(a4, a5));
  Model w = sub(gamma, beta);

  Model up = scale(pow1p_of(xm, mpq_class(-2)), mpq_class(2));
  Model rp = scale(mul(u, mul(up, recip_of(s))), mpq_class(1, 2));
  Model a1p = mul(a1, add(l_x2, mul(scale(x2, mpq_class(2)), recip_of(add(one, x2)))));
  Model a2p = mul(sub(add(one, scale(xm, mpq_class(2))), x2),
                  recip_of(mul(add(one, x2), add(one, x2))));
  Model a3p = mul(a3, add(l_x, mul(xm, recip_of(add(one, xm)))));
  Model a4p = mul(a4, add(l_r, mul(xm, mul(rp, recip_of(add(one, r))))));
  Model num = sub(mul(xm, mul(add(one, xm), rp)), r);
  Model a5p = mul(divide_by_power(num, 2), recip_of(mul(dx, dx)));
  Model gammap = add(a1p, add(mul(a2p, a3), mul(a2, a3p)));
  Model betap = add(mul(a3p, mul(a4, a5)),
                    add(mul(a3, mul(a4p, a5)), mul(a3, mul(a4, a5p))));
  Model wp = sub(gammap, betap);

  // F' = 1 - (2x w' - 4w)/x^3; the low coefficients of V = 2x w' - 4w vanish
  // identically, so the division is exact.
  Model V = sub(scale(mul(xm, wp), mpq_class(2)), scale(w, mpq_class(4)));
  Model fprime = sub(one, divide_by_power(V, 3));
  Model q3 = divide_by_power(w, 3);
  Model z = divide_by_power(sub(constant(mpq_class(1, 2), par), q3), 1);
  return {std::move(w), std::move(wp), std::move(fprime), std::move(q3), std::move(z)};
}

using Piece = std::pair<mpq_class, mpq_class>;

}  // namespace

ContractionCertificate verify_contraction(long subdivision_limit, long digits) {
  if (subdivision_limit < 1) throw DomainError("subdivision_limit must be >= 1");
  mpfr_prec_t prec = bits_for_digits(digits);
  ContractionCertificate cert;
  cert.domain = Interval(mpq_class(1, 10), prec);
  cert.domain = Interval::hull(Interval(Real(0L, prec)), cert.domain);
  cert.max_fprime = Real(0L, prec);

  ModelPack mp = build_models(26, prec);
  Real half(0.5, prec), mhalf(-0.5, prec);

  // Pieces near 0 need the Taylor model (the x^{-3} cancellation makes direct
  // interval evaluation of F' unboundedly wide there); away from 0 plain
  // interval arithmetic with the analytic w, w' is used.
  const mpq_class cutoff(1, 16);
  auto bound_fprime = [&](const mpq_class& a, const mpq_class& b) -> Interval {
    if (b <= cutoff) return tm::range_on(mp.fprime, a, b);
    if (a == 0) return Interval(Real(-1000L, prec), Real(1000L, prec));
    Interval X = Interval::hull(Interval(a, prec), Interval(b, prec));
    Interval one(1L, prec), two(2L, prec);
    return one - two * (w_prime_fn(X) / (X * X) - two * w_fn(X) / (X * X * X));
  };

  std::vector<Piece> stack{{mpq_class(0), mpq_class(1, 10)}};
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    Interval bound = bound_fprime(a, b);
    if (bound.hi() <= half && bound.lo() >= mhalf) {
      cert.pieces.push_back(
          {Interval::hull(Interval(a, prec), Interval(b, prec)), bound});
      Real mag = abs(bound).hi();
      if (mag > cert.max_fprime) cert.max_fprime = mag;
      continue;
    }
    if (static_cast<long>(cert.pieces.size() + stack.size()) + 2 > subdivision_limit) {
      cert.inconclusive = true;
      return cert;
    }
    mpq_class mid = (a + b) / 2;
    stack.push_back({mid, b});
    stack.push_back({a, mid});
  }
  std::sort(cert.pieces.begin(), cert.pieces.end(),
            [](const PieceBound& p1, const PieceBound& p2) {
              return p1.x.lo() < p2.x.lo();
            });

  // F(J) subset of J: F = x (1 - 2 w/x^3) with 0 < w/x^3 < 1/2, i.e. both
  // w/x^3 and (1/2 - w/x^3)/x stay positive.
  Real zero(0L, prec);
  auto positive_on_domain = [&](const tm::Model& m) {
    std::vector<Piece> todo{{mpq_class(0), mpq_class(1, 10)}};
    long budget = 4096;
    while (!todo.empty()) {
      auto [a, b] = todo.back();
      todo.pop_back();
      if (tm::range_on(m, a, b).lo() > zero) continue;
      if (--budget < 0) return false;
      mpq_class mid = (a + b) / 2;
      todo.push_back({mid, b});
      todo.push_back({a, mid});
    }
    return true;
  };
  cert.maps_into = positive_on_domain(mp.q3) && positive_on_domain(mp.z);
  cert.passed = cert.maps_into && !cert.inconclusive && cert.max_fprime <= half;
  return cert;
}

WPositiveCertificate check_w_positive(long n_lo, long n_hi, long digits) {
  if (n_lo < 2 || n_hi < n_lo) throw DomainError("check_w_positive needs 2 <= n_lo <= n_hi");
  WPositiveCertificate cert;
  cert.passed = true;
  for (long n = n_lo; n <= n_hi; ++n) {
    WPositiveRow row;
    row.n = n;
    long d = digits;
    for (int attempt = 0; attempt <= 4; ++attempt, d *= 2) {
      mpfr_prec_t prec = bits_for_digits(d);
      Interval one(1L, prec), s(Real(n, prec));
      mpq_class xiq{mpz_class(n), mpz_class(n) * n + 1};
      Interval xi(xiq, prec);
      Interval bstar = pow(s + one, one + one / s) / s;
      Interval g = pow(xi, -(one / s)) + bstar * xi;
      mpz_class m = n + 1;
      Interval eta = (sqrt(Interval(mpq_class(m * m + 4), prec)) -
                      Interval(n + 1, prec)) /
                     Interval(2L, prec);
      Interval value = pow(eta, -(one / s)) / (one - eta);
      row.margin = g - value;
      row.digits_used = d;
      row.pass = row.margin.lo() > Real(0L, prec);
      if (row.pass) break;
    }
    cert.passed = cert.passed && row.pass;
    cert.rows.push_back(std::move(row));
  }
  return cert;
}

Interval psi_fn(const Interval& x) {
  Interval one(1L, x.prec());
  return one + x + x * x - pow(one + x, one + x);
}

PsiCertificate check_psi_negative(long digits) {
  mpfr_prec_t prec = bits_for_digits(digits);
  PsiCertificate cert;
  cert.max_value = Real(-1L, prec);
  Real zero(0L, prec);

  // near 0: Psi ~ -x^3/2, so certify Psi/x^3 < 0 on [0, 1/10] from its model
  tm::Params par{20, mpq_class(1, 10), prec};
  tm::Model xm = tm::identity(par);
  tm::Model one = tm::constant(mpq_class(1), par);
  tm::Model e = tm::exp_of(tm::mul(tm::add(one, xm), tm::log1p_of(xm)));
  tm::Model psi = tm::sub(tm::add(one, tm::add(xm, tm::mul(xm, xm))), e);
  tm::Model q3 = tm::divide_by_power(psi, 3);
  {
    std::vector<Piece> todo{{mpq_class(0), mpq_class(1, 10)}};
    long budget = 2048;
    while (!todo.empty()) {
      auto [a, b] = todo.back();
      todo.pop_back();
      if (tm::range_on(q3, a, b).hi() < zero) {
        ++cert.pieces;
        continue;
      }
      if (--budget < 0) return cert;
      mpq_class mid = (a + b) / 2;
      todo.push_back({mid, b});
      todo.push_back({a, mid});
    }
  }
  // away from 0: direct interval subdivision of Psi on [1/10, 1]
  std::vector<Piece> todo{{mpq_class(1, 10), mpq_class(1)}};
  long budget = 8192;
  while (!todo.empty()) {
    auto [a, b] = todo.back();
    todo.pop_back();
    Interval val = psi_fn(Interval::hull(Interval(a, prec), Interval(b, prec)));
    if (val.hi() < zero) {
      ++cert.pieces;
      if (val.hi() > cert.max_value) cert.max_value = val.hi();
      continue;
    }
    if (--budget < 0) return cert;
    mpq_class mid = (a + b) / 2;
    todo.push_back({mid, b});
    todo.push_back({a, mid});
  }
  cert.passed = true;
  return cert;
}

}  // namespace brjuno::certified
