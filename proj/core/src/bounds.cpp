#include "brjuno/bounds.hpp"

#include <algorithm>

#include "brjuno/errors.hpp"
#include "brjuno/eval.hpp"

namespace brjuno::bounds {

Real b_star(const Real& sigma) {
  mpfr_prec_t prec = sigma.prec();
  Real one(1L, prec);
  return pow(sigma + one, one + one / sigma) / sigma;
}

BoundContext make_context(const Real& sigma) {
  if (!(sigma > Real(0L, sigma.prec()))) throw DomainError("sigma must be > 0");
  return BoundContext{sigma, b_star(sigma), sigma.prec()};
}

Real phi(const Real& b, const BoundContext& ctx) {
  Real one(1L, ctx.prec);
  return pow(b * ctx.sigma, one / (ctx.sigma + one)) * (one + one / ctx.sigma);
}

IterationResult b_star_iterate(const Real& sigma, long k_max) {
  if (k_max < 1) throw DomainError("b_star_iterate: k_max must be >= 1");
  BoundContext ctx = make_context(sigma);
  IterationResult res;
  Real b(1L, ctx.prec);
  res.values.push_back(b);
  Real tol = pow(Real(10L, ctx.prec), Real(-12L, ctx.prec));
  for (long k = 1; k < k_max; ++k) {
    b = phi(b, ctx);
    res.values.push_back(b);
    if (abs(b - ctx.b_star) < tol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

Real g(const Real& x, const BoundContext& ctx) {
  if (!(x > Real(0L, ctx.prec))) throw DomainError("g: x must be > 0");
  return inv_power(x, ctx.sigma) + ctx.b_star * x;
}

Real g_prime(const Real& x, const BoundContext& ctx) {
  Real one(1L, ctx.prec);
  return ctx.b_star - inv_power(x, ctx.sigma) / (ctx.sigma * x);
}

Real g_second(const Real& x, const BoundContext& ctx) {
  Real one(1L, ctx.prec);
  Real inv_s = one / ctx.sigma;
  return inv_s * (inv_s + one) * inv_power(x, ctx.sigma) / (x * x);
}

Real g_argmin(const BoundContext& ctx) {
  Real one(1L, ctx.prec);
  return pow(ctx.b_star * ctx.sigma, -ctx.sigma / (ctx.sigma + one));
}

Real g_k(const Real& x, long k, const BoundContext& ctx) {
  mpfr_prec_t prec = ctx.prec;
  Real one(1L, prec), kk(k, prec);
  Real lo = one / Real(k + 1, prec);
  if (!(x > lo) || !(x < one / kk))
    throw DomainError("g_k: x outside the cylinder (1/(k+1), 1/k)");
  Real y = one / x - kk;
  // the bound genuinely diverges at the cylinder's right endpoint
  Real cutoff = pow(Real(10L, prec),
                    Real(-(static_cast<long>(prec) / 7), prec));  // ~half the digits
  if (y < cutoff) return Real::pos_inf(prec);
  return inv_power(x, ctx.sigma) + x * inv_power(y, ctx.sigma) + (one - kk * x) * ctx.b_star;
}

Real g_k_prime(const Real& x, long k, const BoundContext& ctx) {
  mpfr_prec_t prec = ctx.prec;
  Real one(1L, prec), kk(k, prec);
  Real y = one / x - kk;
  Real inv_s = one / ctx.sigma;
  return -inv_s * inv_power(x, ctx.sigma) / x + inv_power(y, ctx.sigma) +
         inv_s * inv_power(y, ctx.sigma) / (y * x) - kk * ctx.b_star;
}

Real tangency_point(long k, const BoundContext& ctx) {
  Real one(1L, ctx.prec);
  return one / (Real(k, ctx.prec) + one / (ctx.sigma + one));
}

Real g_min_over(const Real& a, const Real& b, const BoundContext& ctx) {
  Real xstar = g_argmin(ctx);
  if (xstar <= a) return g(a, ctx);
  if (xstar >= b) return g(b, ctx);
  return ctx.b_star;  // g(xstar) = b*
}

DominanceCertificate verify_cylinder_dominance(long k, const BoundContext& ctx,
                                               long samples) {
  if (k < 1 || samples < 3) throw DomainError("verify_cylinder_dominance: bad arguments");
  mpfr_prec_t prec = ctx.prec;
  Real one(1L, prec);
  Real lo = one / Real(k + 1, prec), hi = one / Real(k, prec);
  Real mid = (lo + hi) / Real(2L, prec);
  Real rad = (hi - lo) / Real(2L, prec);
  Real tol = pow(Real(10L, prec), Real(-30L, prec));

  DominanceCertificate cert;
  cert.worst_margin = Real::pos_inf(prec);
  cert.worst_x = mid;

  auto diff = [&](const Real& x) { return g_k(x, k, ctx) - g(x, ctx); };

  // Chebyshev-distributed samples (they avoid the divergent endpoints).
  for (long i = 0; i < samples; ++i) {
    Real theta = Real(2 * i + 1, prec) / Real(2 * samples, prec);
    Real c(prec);
    mpfr_const_pi(c.raw(), MPFR_RNDN);
    c = c * theta;
    mpfr_cos(c.raw(), c.raw(), MPFR_RNDN);
    Real x = mid + rad * c;
    Real d = diff(x);
    if (d.is_inf()) continue;
    if (d < cert.worst_margin) {
      cert.worst_margin = d;
      cert.worst_x = x;
    }
    if (d < -tol) ++cert.violations;
  }

  // convexity of g_k - g via second differences on a uniform interior grid
  cert.convexity_ok = true;
  long m = std::min<long>(samples, 256);
  Real h = (hi - lo) / Real(m + 1, prec);
  Real prev = diff(lo + h), cur = diff(lo + h + h);
  for (long i = 3; i <= m; ++i) {
    Real next = diff(lo + Real(i, prec) * h);
    if (!prev.is_inf() && !cur.is_inf() && !next.is_inf() &&
        prev - cur - cur + next < -tol)
      cert.convexity_ok = false;
    prev = cur;
    cur = next;
  }

  Real p = tangency_point(k, ctx);
  Real t10 = pow(Real(10L, prec), Real(-10L, prec));
  cert.tangency_ok = abs(g_k(p, k, ctx) - g(p, ctx)) < t10 &&
                     abs(g_k_prime(p, k, ctx) - g_prime(p, ctx)) < t10;

  cert.passed = cert.violations == 0 && cert.convexity_ok && cert.tangency_ok;
  return cert;
}

}  // namespace brjuno::bounds
