#pragma once

#include <gmpxx.h>

#include <vector>

#include "brjuno/cf.hpp"
#include "brjuno/eval.hpp"

namespace brjuno::scaling {

/// Orbit of x_{k+1} = 1/((n+1) + x_k) converging to eta_{n+1}, with the
/// offset and energy sequences used to measure the square-root cusp of B_n
/// at its minimizer.
struct ScalingRun {
  long n = 0;
  Real x1;
  Real eta;                      // eta_{n+1}
  bool rational_seed = false;    // one-sided probe mode (B at rationals is +inf)
  std::vector<Real> orbit;       // x_1..x_steps (1-based: orbit[0] unused)
  std::vector<Real> delta;       // x_k - eta
  std::vector<Enclosure> energy; // E_k = B_n(x_k) - B_n(eta)
  std::vector<Real> lambdas;     // lambda_k = x_{2k+2} x_{2k+1} (1-based)
  std::vector<mpz_class> G, H;   // G_1=1, G_2=n+1, G_{k+1}=(n+1)G_k+G_{k-1}; H_1=0, H_2=1
};

/// Default seed: the quadratic irrational [0; n+2, overline(n+1)], which
/// lies left of eta_{n+1} and makes every orbit point eventually periodic,
/// so all energies have exact closed forms.
ScalingRun run_orbit(long n, long steps, long digits = kDefaultDigits);

/// The rational-seed variant (default x1 = (n+1)/((n+1)^2+1)); energies are
/// deep partial sums up to the expansion's terminal depth, flagged one-sided.
ScalingRun run_orbit_rational(long n, const mpq_class& x1, long steps,
                              long digits = kDefaultDigits);

/// Exact rational bracket G_{2k}/G_{2k+2} <= lambda_k <= G_{2k+2}/G_{2k+4}.
std::pair<mpq_class, mpq_class> lambda_bounds(long n, long k);

struct ExponentFit {
  Real tau_hat;
  Real c_hat;
  std::vector<long> window;  // even indices used in the fit
};

/// Least-squares slope of log E_k against log |delta_k| over the even-index
/// subsequence (first two even indices dropped as transient; points whose
/// enclosure is wider than 1% of E are excluded).
ExponentFit estimate_exponent(long n, long steps, long digits = 0 /* auto */);

}  // namespace brjuno::scaling
