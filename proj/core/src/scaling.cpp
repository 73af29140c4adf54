#include "brjuno/scaling.hpp"

#include <cmath>

#include "brjuno/errors.hpp"

namespace brjuno::scaling {

namespace {

void fill_gh(ScalingRun& run, long upto) {
  run.G.assign(upto + 1, 0);
  run.H.assign(upto + 1, 0);
  run.G[1] = 1;
  run.H[1] = 0;
  if (upto >= 2) {
    run.G[2] = run.n + 1;
    run.H[2] = 1;
  }
  for (long k = 3; k <= upto; ++k) {
    run.G[k] = (run.n + 1) * run.G[k - 1] + run.G[k - 2];
    run.H[k] = (run.n + 1) * run.H[k - 1] + run.H[k - 2];
  }
}

void check_closed_form(const ScalingRun& run, long steps, mpfr_prec_t prec) {
  // x_k = (G_{k-1} + x1 H_{k-1}) / (G_k + x1 H_k), cross-checked against the
  // direct iteration.
  Real tol = pow(Real(2L, prec), Real(20L - static_cast<long>(prec), prec));
  for (long k = 2; k <= steps; ++k) {
    Real cf = (Real(run.G[k - 1], prec) + run.x1 * Real(run.H[k - 1], prec)) /
              (Real(run.G[k], prec) + run.x1 * Real(run.H[k], prec));
    if (abs(cf - run.orbit[k]) > tol)
      throw PrecisionExhaustedError("orbit disagrees with its closed form");
  }
}

void fill_lambdas(ScalingRun& run, long steps) {
  run.lambdas.assign(1, Real());
  for (long k = 1; 2 * k + 2 <= steps; ++k)
    run.lambdas.push_back(run.orbit[2 * k + 2] * run.orbit[2 * k + 1]);
}

}  // namespace

ScalingRun run_orbit(long n, long steps, long digits) {
  if (n < 2) throw DomainError("run_orbit needs n >= 2");
  if (steps < 2) throw DomainError("run_orbit needs steps >= 2");
  mpfr_prec_t prec = bits_for_digits(digits);
  ScalingRun run;
  run.n = n;
  run.eta = eta(n + 1, prec).root(prec);
  run.x1 = Real(1L, prec) / (Real(n + 2, prec) + run.eta);
  fill_gh(run, steps + 1);

  SigmaParam sp(Real(n, prec), digits);
  CFSpec fixed;
  fixed.period = {n + 1};
  Enclosure at_eta = eval_periodic_exact(fixed, sp).value;

  run.orbit.assign(steps + 1, Real(prec));
  run.delta.assign(steps + 1, Real(prec));
  run.energy.assign(steps + 1, Enclosure{Real(prec), Real(prec)});
  Real x = run.x1;
  for (long k = 1; k <= steps; ++k) {
    run.orbit[k] = x;
    run.delta[k] = x - run.eta;
    // x_k = [0; (n+1)^{k-1}, n+2, overline(n+1)]: exact closed form
    CFSpec spec;
    spec.prefix.assign(k - 1, n + 1);
    spec.prefix.push_back(n + 2);
    spec.period = {n + 1};
    Enclosure b = eval_periodic_exact(spec, sp).value;
    run.energy[k] = Enclosure{b.lo - at_eta.hi, b.hi - at_eta.lo};
    x = Real(1L, prec) / (Real(n + 1, prec) + x);
  }
  check_closed_form(run, steps, prec);
  fill_lambdas(run, steps);
  return run;
}

ScalingRun run_orbit_rational(long n, const mpq_class& x1, long steps, long digits) {
  if (n < 2) throw DomainError("run_orbit needs n >= 2");
  if (steps < 2) throw DomainError("run_orbit needs steps >= 2");
  mpq_class cap(mpz_class(n + 1), mpz_class(n + 1) * (n + 1) + 1);
  if (!(x1 > 0 && x1 <= cap)) throw DomainError("x1 out of (0, (n+1)/((n+1)^2+1)]");
  mpfr_prec_t prec = bits_for_digits(digits);
  ScalingRun run;
  run.n = n;
  run.rational_seed = true;
  run.eta = eta(n + 1, prec).root(prec);
  run.x1 = Real(x1, prec);
  fill_gh(run, steps + 1);

  SigmaParam sp(Real(n, prec), digits);
  CFSpec fixed;
  fixed.period = {n + 1};
  Enclosure at_eta = eval_periodic_exact(fixed, sp).value;

  run.orbit.assign(steps + 1, Real(prec));
  run.delta.assign(steps + 1, Real(prec));
  run.energy.assign(steps + 1, Enclosure{Real(prec), Real(prec)});
  for (long k = 1; k <= steps; ++k) {
    mpq_class num = run.G[k - 1] + x1 * run.H[k - 1];
    mpq_class den = run.G[k] + x1 * run.H[k];
    mpq_class xk = (k == 1) ? x1 : num / den;
    run.orbit[k] = Real(xk, prec);
    run.delta[k] = run.orbit[k] - run.eta;
    // full finite sum of the rational's expansion: a one-sided probe of B_n
    Real S(0L, prec), beta(1L, prec);
    mpq_class rest = xk;
    while (rest != 0) {
      Real xr(rest, prec);
      S = S + beta * inv_power(xr, sp.sigma);
      beta = beta * xr;
      mpq_class inv = mpq_class(1) / rest;
      rest = inv - mpq_class(inv.get_num() / inv.get_den());
    }
    Real e = S - at_eta.hi;
    run.energy[k] = Enclosure{e, e};
  }
  check_closed_form(run, steps, prec);
  fill_lambdas(run, steps);
  return run;
}

std::pair<mpq_class, mpq_class> lambda_bounds(long n, long k) {
  if (n < 2 || k < 1) throw DomainError("lambda_bounds needs n >= 2, k >= 1");
  long upto = 2 * k + 4;
  std::vector<mpz_class> G(upto + 1);
  G[1] = 1;
  G[2] = n + 1;
  for (long i = 3; i <= upto; ++i) G[i] = (n + 1) * G[i - 1] + G[i - 2];
  mpq_class lo(G[2 * k], G[2 * k + 2]), hi(G[2 * k + 2], G[2 * k + 4]);
  lo.canonicalize();
  hi.canonicalize();
  return {lo, hi};
}

ExponentFit estimate_exponent(long n, long steps, long digits) {
  if (n < 2 || steps < 6 || steps % 2 != 0)
    throw DomainError("estimate_exponent needs n >= 2 and even steps >= 6");
  if (digits == 0)
    digits = 60 + static_cast<long>(3.0 * steps * std::log10(static_cast<double>(n) + 2));
  mpfr_prec_t prec = bits_for_digits(digits);
  ScalingRun run = run_orbit(n, steps, digits);

  std::vector<double> xs, ys;
  ExponentFit fit{Real(prec), Real(prec), {}};
  Real hundredth = Real(1L, prec) / Real(100L, prec);
  for (long k = 6; k <= steps; k += 2) {  // drop the first two even indices
    const Enclosure& E = run.energy[k];
    if (!(E.lo > Real(0L, prec))) throw DomainError("energy not resolvably positive");
    if (E.width() > E.lo * hundredth) continue;  // enclosure too wide for the fit
    xs.push_back(log(abs(run.delta[k])).to_double());
    ys.push_back(log(E.lo).to_double());
    fit.window.push_back(k);
  }
  if (xs.size() < 2) throw DomainError("insufficient decay window for the fit");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double m = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  double intercept = (sy - slope * sx) / m;
  fit.tau_hat = Real(slope, prec);
  fit.c_hat = exp(Real(intercept, prec));
  return fit;
}

}  // namespace brjuno::scaling
