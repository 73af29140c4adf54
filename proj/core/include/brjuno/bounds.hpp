#pragma once

#include <vector>

#include "brjuno/real.hpp"

namespace brjuno::bounds {

/// sigma together with the universal floor b* = (sigma+1)^{1+1/sigma}/sigma.
struct BoundContext {
  Real sigma;
  Real b_star;
  mpfr_prec_t prec;
};

Real b_star(const Real& sigma);
BoundContext make_context(const Real& sigma);

/// phi(b) = (b sigma)^{1/(sigma+1)} (1 + 1/sigma); b* is its attractive
/// fixed point.
Real phi(const Real& b, const BoundContext& ctx);

struct IterationResult {
  std::vector<Real> values;  // b_1 = 1, b_{k+1} = phi(b_k)
  bool converged = false;    // |b_k - b*| < 10^-12 at the final index
};
IterationResult b_star_iterate(const Real& sigma, long k_max);

/// g(x) = x^{-1/sigma} + b* x, the global lower bound for B_sigma.
Real g(const Real& x, const BoundContext& ctx);
Real g_prime(const Real& x, const BoundContext& ctx);
Real g_second(const Real& x, const BoundContext& ctx);
/// argmin of g over (0,1]: (b* sigma)^{-sigma/(sigma+1)}.
Real g_argmin(const BoundContext& ctx);

/// Cylinder bound on (1/(k+1), 1/k):
/// g_k(x) = x^{-1/sigma} + x (1/x - k)^{-1/sigma} + (1 - kx) b*.
/// Returns +inf when 1/x - k underflows half the working digits.
Real g_k(const Real& x, long k, const BoundContext& ctx);
Real g_k_prime(const Real& x, long k, const BoundContext& ctx);

/// Tangency point p = 1/(k + 1/(sigma+1)) where g_k and g touch to first
/// order.
Real tangency_point(long k, const BoundContext& ctx);

/// Minimum of g over an interval (a, b] subset of (0,1] (g is convex with
/// interior argmin).  Used as a certified floor for partial tails.
Real g_min_over(const Real& a, const Real& b, const BoundContext& ctx);

struct DominanceCertificate {
  bool passed = false;
  bool tangency_ok = false;
  bool convexity_ok = false;
  Real worst_margin;        // min of g_k - g over the samples
  Real worst_x;             // where it was attained
  long violations = 0;
};

/// Checks g_k >= g at Chebyshev samples of the cylinder, convexity of
/// g_k - g via second differences, and first-order tangency at p.
DominanceCertificate verify_cylinder_dominance(long k, const BoundContext& ctx,
                                               long samples);

}  // namespace brjuno::bounds
