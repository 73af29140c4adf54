#include "brjuno/minima.hpp"

#include <algorithm>
#include <thread>

#include "brjuno/errors.hpp"

namespace brjuno::minima {

namespace {

// Interval-arithmetic companions of the bounds:: point functions, so that
// every certificate margin is a directed-rounding enclosure.
struct IvCtx {
  mpfr_prec_t prec;
  Interval one, sigma, minv;  // minv = -1/sigma
  Interval bstar, argmin;
};

IvCtx make_iv(const Real& sigma, mpfr_prec_t prec) {
  IvCtx c{prec, Interval(1L, prec), Interval(sigma), Interval(prec), Interval(prec),
          Interval(prec)};
  c.minv = -(c.one / c.sigma);
  Interval sp1 = c.sigma + c.one;
  c.bstar = pow(sp1, c.one + c.one / c.sigma) / c.sigma;
  c.argmin = pow(c.bstar * c.sigma, -(c.sigma / sp1));
  return c;
}

Interval g_iv(const Interval& x, const IvCtx& c) { return pow(x, c.minv) + c.bstar * x; }

Interval g_prime_iv(const Interval& x, const IvCtx& c) {
  return c.bstar - pow(x, c.minv - c.one) / c.sigma;
}

Interval g_second_iv(const Interval& x, const IvCtx& c) {
  return (c.one / c.sigma) * (c.one + c.one / c.sigma) *
         pow(x, c.minv - c.one - c.one);
}

Interval g_k_prime_iv(const Interval& x, long k, const IvCtx& c) {
  Interval kk(k, c.prec);
  Interval y = c.one / x - kk;
  return pow(y, c.minv) + pow(y, c.minv - c.one) / (c.sigma * x) +
         c.minv * pow(x, c.minv - c.one) - kk * c.bstar;
}

// Certified lower bound for g over [a, b] (a may be 0): g is convex with
// argmin enclosed by c.argmin.
Real g_floor_over(const Real& a, const Real& b, const IvCtx& c) {
  if (b < c.argmin.lo()) return g_iv(Interval(b), c).lo();
  if (a > c.argmin.hi()) return g_iv(Interval(a), c).lo();
  return c.bstar.lo();
}

Interval eta_iv(long m, mpfr_prec_t prec) {
  mpz_class disc = mpz_class(m) * m + 4;
  Interval root = sqrt(Interval(mpq_class(disc), prec));
  return (root - Interval(m, prec)) / Interval(2L, prec);
}

// B_sigma at the period-one fixed point eta_m: eta^{-1/sigma} / (1 - eta).
Interval fixed_value_iv(long m, const IvCtx& c) {
  Interval e = eta_iv(m, c.prec);
  return pow(e, c.minv) / (c.one - e);
}

Real mpq_real(const mpq_class& q, mpfr_prec_t prec) { return Real(q, prec); }

Interval mpq_iv(const mpq_class& a, const mpq_class& b, mpfr_prec_t prec) {
  return Interval::hull(Interval(a, prec), Interval(b, prec));
}

}  // namespace

Real sigma_star(long n, long digits) {
  if (n < 1) throw DomainError("sigma_star needs n >= 1");
  mpfr_prec_t prec = bits_for_digits(digits);
  Real en = eta(n, prec).root(prec);
  Real en1 = eta(n + 1, prec).root(prec);
  Real one(1L, prec);
  return log(en / en1) / log((one - en1) / (one - en));
}

Real sigma_star_bisect(long n, long digits, long bits_tol) {
  if (n < 1) throw DomainError("sigma_star_bisect needs n >= 1");
  mpfr_prec_t prec = bits_for_digits(digits) + 64;
  Real en = eta(n, prec).root(prec);
  Real en1 = eta(n + 1, prec).root(prec);
  Real one(1L, prec);
  auto h = [&](const Real& s) {
    return inv_power(en, s) / (one - en) - inv_power(en1, s) / (one - en1);
  };
  Real lo = (n >= 2) ? Real(n - 1, prec) : one / Real(20L, prec);
  Real hi(n, prec);
  if (!(h(lo).sign() < 0 && h(hi).sign() > 0))
    throw PrecisionExhaustedError("sigma_star bracket lost");
  Real tol = pow(Real(2L, prec), Real(-bits_tol, prec));
  Real half(0.5, prec);
  while (hi - lo > tol) {
    Real mid = (lo + hi) * half;
    if (h(mid).sign() > 0)
      hi = mid;
    else
      lo = mid;
  }
  return (lo + hi) * half;
}

Real sigma_star_asymptote(long n, long digits) {
  mpfr_prec_t prec = bits_for_digits(digits);
  Real nn(n, prec);
  return nn - Real(1L, prec) / Real(2L, prec) + Real(5L, prec) / (Real(6L, prec) * nn);
}

// --- certified cylinder branch-and-bound ------------------------------------

namespace {

struct Node {
  std::vector<long> d;  // fixed partial quotients a_1..a_j
  long next_min;        // next quotient >= next_min, i.e. x_j in (0, 1/next_min]
};

// Lower bound for B_sigma over the set of points with quotient prefix d and
// x_j in (0, 1/next_min]:
//   B >= sum_{i<j} beta_{i-1} x_i^{-1/sigma} + beta_{j-1} * min g(x_j).
// Each x_i is a Moebius image of the free tail t = x_j, so its exact range
// is the hull of the two rational endpoint values.
Real node_lower_bound(const Node& nd, const IvCtx& c) {
  long j = static_cast<long>(nd.d.size());
  mpq_class tlo(0), thi(1, nd.next_min);
  auto orbit_point = [&](long i, const mpq_class& t) {
    mpq_class w = t;
    for (long idx = j - 1; idx >= i; --idx) w = mpq_class(1) / (nd.d[idx] + w);
    return w;
  };
  Interval sum(0L, c.prec), beta_prev(1L, c.prec);
  for (long i = 0; i < j; ++i) {
    Interval xi = mpq_iv(orbit_point(i, tlo), orbit_point(i, thi), c.prec);
    sum = sum + beta_prev * pow(xi, c.minv);
    beta_prev = beta_prev * xi;
  }
  Real floor_tail =
      g_floor_over(Real(0L, c.prec), mpq_real(thi, c.prec), c);
  return (sum + beta_prev * Interval(floor_tail)).lo();
}

}  // namespace

CylinderFloor certified_cylinder_floor(long k0, const Real& sigma, const Real& target,
                                       long digits, long max_depth, long branch_cap) {
  mpfr_prec_t prec = bits_for_digits(digits);
  IvCtx c = make_iv(sigma + Real(0L, prec), prec);
  CylinderFloor out;
  out.certified = true;
  out.floor = Real::pos_inf(prec);
  std::vector<Node> stack{{std::vector<long>{k0}, 1}};
  long iters = 0;
  while (!stack.empty()) {
    if (++iters > 500000) {
      out.certified = false;
      return out;
    }
    Node nd = std::move(stack.back());
    stack.pop_back();
    out.max_depth_hit = std::max(out.max_depth_hit, static_cast<long>(nd.d.size()));
    Real lb = node_lower_bound(nd, c);
    if (lb > target) {
      ++out.leaves;
      if (lb < out.floor) out.floor = lb;
      continue;
    }
    if (static_cast<long>(nd.d.size()) >= max_depth || nd.next_min > 1000000) {
      out.certified = false;
      out.floor = lb;
      ++out.leaves;
      return out;
    }
    for (long a = nd.next_min; a < nd.next_min + branch_cap; ++a) {
      Node child{nd.d, 1};
      child.d.push_back(a);
      stack.push_back(std::move(child));
    }
    stack.push_back(Node{nd.d, nd.next_min + branch_cap});
  }
  return out;
}

// --- localization ------------------------------------------------------------

namespace {

// Certified min of the depth-one cylinder bound g_1 over [1/2, 1] by adaptive
// interval subdivision; near 1 it falls back to g (both blow up there).
struct G1Route {
  bool ok = false;
  Real floor;
};

G1Route g1_route(const IvCtx& c, const Real& target, mpfr_prec_t prec) {
  G1Route out;
  out.floor = Real::pos_inf(prec);
  mpq_class sliver = mpq_class(1) - mpq_class(1, 1 << 24);
  // right sliver [1 - 2^-24, 1]: g is increasing there once past its argmin
  {
    Interval a(sliver, prec);
    if (!(g_prime_iv(a, c).lo() > Real(0L, prec))) return out;
    Real f = g_iv(a, c).lo();
    if (!(f > target)) return out;
    if (f < out.floor) out.floor = f;
  }
  std::vector<std::pair<mpq_class, mpq_class>> pieces{{mpq_class(1, 2), sliver}};
  long iters = 0;
  while (!pieces.empty()) {
    if (++iters > 20000) return out;
    auto [a, b] = pieces.back();
    pieces.pop_back();
    Interval x = mpq_iv(a, b, prec);
    Interval y = c.one / x - c.one;  // next Gauss iterate range, positive for b < 1
    Interval g1 = pow(x, c.minv) + x * pow(y, c.minv) + (c.one - x) * c.bstar;
    if (g1.lo() > target) {
      if (g1.lo() < out.floor) out.floor = g1.lo();
      continue;
    }
    if (b - a < mpq_class(1, 1L << 40)) return out;  // inconclusive: min too close
    mpq_class mid = (a + b) / 2;
    pieces.push_back({a, mid});
    pieces.push_back({mid, b});
  }
  out.ok = true;
  return out;
}

}  // namespace

LocalizationCertificate localize(long n, const Real& sigma0, long digits) {
  if (n < 1) throw DomainError("localize needs n >= 1");
  mpfr_prec_t prec = bits_for_digits(digits);
  Real sigma = sigma0 + Real(0L, prec);
  SigmaParam sp(sigma, digits);
  LocalizationCertificate cert;
  cert.n = n;
  cert.sigma = sigma;

  CFSpec fixed;
  fixed.period = {n + 1};
  cert.rhs = eval_periodic_exact(fixed, sp).value;

  IvCtx c = make_iv(sigma, prec);
  Real zero(0L, prec);
  bool all_ok = true;
  auto add = [&](const std::string& name, bool pass, const Real& value) {
    cert.checks.push_back({name, pass, value});
    all_ok = all_ok && pass;
  };

  if (n >= 2) {
    cert.route = "xi";
    mpq_class xiq{mpz_class(n), mpz_class(n) * n + 1};
    Interval xi(xiq, prec);
    cert.xi = xi.mid();

    Interval gp = g_prime_iv(xi, c);
    add("g-increasing-right-of-xi", gp.lo() > zero, gp.lo());
    Interval gpp = g_second_iv(xi, c);
    add("g-convex", gpp.lo() > zero, gpp.lo());

    Interval gnp = g_k_prime_iv(xi, n, c);
    add("cylinder-bound-decreasing-left-of-xi", gnp.hi() < zero, gnp.hi());

    // convexity of g_n on [1/(n+1), xi] via second differences
    bounds::BoundContext bctx = bounds::make_context(sigma);
    Real a = Real(1L, prec) / Real(n + 1, prec);
    Real xr = cert.xi;
    long samples = 64;
    Real hstep = (xr - a) / Real(samples + 1, prec);
    Real worst = Real::pos_inf(prec);
    for (long i = 2; i < samples; ++i) {
      Real x = a + hstep * Real(i, prec);
      Real d2 = bounds::g_k(x + hstep, n, bctx) - Real(2L, prec) * bounds::g_k(x, n, bctx) +
                bounds::g_k(x - hstep, n, bctx);
      if (d2 < worst) worst = d2;
    }
    add("cylinder-bound-convex", worst > zero, worst);

    auto dom = bounds::verify_cylinder_dominance(n, bctx, 64);
    add("cylinder-bound-dominates-g", dom.passed, dom.worst_margin);

    Interval gxi = g_iv(xi, c);
    cert.lhs = gxi.lo();
    cert.margin = cert.lhs - cert.rhs.hi;
    add("value-separation", cert.margin > zero, cert.margin);
    cert.passed = all_ok;
    return cert;
  }

  // n == 1: compare min over [1/2, 1] against B_sigma(eta_2)
  cert.xi = Real(1L, prec) / Real(2L, prec);
  Real target = cert.rhs.hi;
  G1Route g1 = g1_route(c, target, prec);
  if (g1.ok) {
    cert.route = "g1-polynomial";
    cert.lhs = g1.floor;
    add("g1-min-exceeds-target", true, g1.floor - target);
  } else {
    cert.route = "cylinder-bnb";
    CylinderFloor bnb = certified_cylinder_floor(1, sigma, target, digits);
    cert.lhs = bnb.floor;
    add("branch-and-bound-floor", bnb.certified, bnb.floor - target);
    add("branch-and-bound-leaves", bnb.leaves > 0, Real(bnb.leaves, prec));
  }
  cert.margin = cert.lhs - cert.rhs.hi;
  add("value-separation", cert.margin > zero, cert.margin);
  cert.passed = all_ok;
  return cert;
}

// --- monotonicity ------------------------------------------------------------

MonotonicityCertificate monotonicity_checks(long n, const Real& sigma0, long digits) {
  if (n < 0) throw DomainError("monotonicity_checks needs n >= 0");
  mpfr_prec_t prec = bits_for_digits(digits);
  Real sigma = sigma0 + Real(0L, prec);
  MonotonicityCertificate cert;
  Real zero(0L, prec), one(1L, prec);
  Real en1 = eta(n + 1, prec).root(prec);
  cert.precondition_ok = sigma < Real(n, prec) + en1;
  bool all_ok = cert.precondition_ok;
  auto add = [&](const std::string& name, bool pass, const Real& value) {
    cert.checks.push_back({name, pass, value});
    all_ok = all_ok && pass;
  };

  IvCtx c = make_iv(sigma, prec);
  Interval etaI = eta_iv(n + 1, prec);

  // h'_sigma(x) = ((1+sigma)x - 1) / (sigma (1-x)^2 x^{1+1/sigma}): negative on
  // (0, eta] iff (1+sigma) eta < 1.
  Interval hnum = (c.one + c.sigma) * etaI - c.one;
  add("h-decreasing-on-(0,eta]", hnum.hi() < zero, hnum.hi());

  // (n+1) f'_sigma(eta) = (1/sigma) eta^{-2-1/sigma} (n+1+eta - (sigma+1))
  Interval two(2L, prec);
  Interval fpe = (pow(etaI, c.minv - two) / c.sigma) *
                 (Interval(n + 1, prec) + etaI - (c.sigma + c.one));
  add("f-prime-positive-at-eta", fpe.lo() > zero, fpe.lo());

  // f_sigma(x) = (1/(n+1)) [x^{-1-1/sigma} + (1/x - (n+1))^{-1/sigma}] on
  // (eta, 1/(n+1)): sampled derivative sign and convexity (both terms convex).
  Real b = one / Real(n + 1, prec);
  long samples = 48;
  Real hstep = (b - en1) / Real(samples + 1, prec);
  auto f = [&](const Real& x) {
    Real y = one / x - Real(n + 1, prec);
    return (inv_power(x, sigma) / x + inv_power(y, sigma)) / Real(n + 1, prec);
  };
  auto fprime = [&](const Real& x) {
    Real y = one / x - Real(n + 1, prec);
    return (inv_power(y, sigma) / (y * x * x) -
            (sigma + one) * inv_power(x, sigma) / (x * x)) /
           (sigma * Real(n + 1, prec));
  };
  Real worst_fp = Real::pos_inf(prec), worst_d2 = Real::pos_inf(prec);
  for (long i = 1; i <= samples; ++i) {
    Real x = en1 + hstep * Real(i, prec);
    Real fp = fprime(x);
    if (fp < worst_fp) worst_fp = fp;
    if (i > 1 && i < samples) {
      Real d2 = f(x + hstep) - Real(2L, prec) * f(x) + f(x - hstep);
      if (d2 < worst_d2) worst_d2 = d2;
    }
  }
  add("f-increasing-on-[eta,1/(n+1)]", worst_fp > zero, worst_fp);
  add("f-convex", worst_d2 > zero, worst_d2);

  cert.passed = all_ok;
  return cert;
}

// --- phase scan ----------------------------------------------------------------

namespace {

std::vector<CFSpec> build_candidates(const CandidateFamily& family) {
  std::vector<CFSpec> out;
  for (long m = 1; m <= family.max_period1_quotient; ++m) {
    CFSpec s;
    s.period = {m};
    out.push_back(std::move(s));
  }
  for (long m = 1; m <= family.max_period2_quotient; ++m)
    for (long l = 1; l <= family.max_period2_quotient; ++l) {
      if (m == l) continue;
      CFSpec s;
      s.period = {m, l};
      out.push_back(std::move(s));
    }
  return out;
}

// Exact continued fraction of a rational in (0,1) by Euclid's algorithm.
std::vector<long> rational_quotients(mpq_class x) {
  std::vector<long> out;
  while (x != 0) {
    mpq_class inv = mpq_class(1) / x;
    mpz_class fl = inv.get_num() / inv.get_den();  // floor, both positive
    out.push_back(fl.get_si());
    x = inv - mpq_class(fl);
  }
  return out;
}

}  // namespace

std::vector<PhaseRow> phase_scan(const Real& sigma_lo, const Real& sigma_hi, long steps,
                                 const CandidateFamily& family, long digits,
                                 long threads) {
  if (steps < 1) throw DomainError("phase_scan needs steps >= 1");
  mpfr_prec_t prec = bits_for_digits(digits);
  std::vector<CFSpec> cands = build_candidates(family);
  std::vector<PhaseRow> rows(steps);

  auto worker = [&](long first, long stride) {
    for (long i = first; i < steps; i += stride) {
      Real t = (steps == 1) ? Real(0L, prec)
                            : Real(i, prec) / Real(steps - 1, prec);
      Real sigma = sigma_lo + (sigma_hi - sigma_lo) * t;
      SigmaParam sp(sigma + Real(0L, prec), digits);
      PhaseRow row;
      row.sigma = sp.sigma;

      Enclosure best;
      std::size_t best_idx = 0;
      for (std::size_t k = 0; k < cands.size(); ++k) {
        Enclosure v = eval_periodic_exact(cands[k], sp).value;
        if (k == 0 || v.lo < best.lo) {
          best = v;
          best_idx = k;
        }
      }
      row.argmin = cands[best_idx];
      row.min_value = best;
      row.family = row.argmin.period.size() == 1 ? "period-1" : "period-2";

      // falsification net: rational grid midpoints, pruned by the universal
      // lower bound g; a point flags when even an optimistic tail (quotients
      // no larger than those already seen) stays below the best candidate.
      bounds::BoundContext bctx = bounds::make_context(sp.sigma);
      long N = family.float_grid_points;
      for (long k = 0; k < N && !row.float_net_flag; ++k) {
        mpq_class xq(2 * k + 1, 2 * N);
        xq.canonicalize();
        Real x(xq, prec);
        if (bounds::g(x, bctx) >= best.lo) continue;
        std::vector<long> qs = rational_quotients(xq);
        if (qs.size() > 1) qs.pop_back();  // open the last cylinder
        long M = 1;
        Real S(0L, prec), beta(1L, prec), xi(x);
        for (long a : qs) {
          M = std::max(M, a);
          S = S + beta * inv_power(xi, sp.sigma);
          beta = beta * xi;
          xi = Real(1L, prec) / xi - Real(a, prec);
          if (xi.sign() <= 0) break;
        }
        Real optimistic_hi = S + beta * tail_bound(M, sp);
        if (optimistic_hi < best.lo) row.float_net_flag = true;
      }
      rows[i] = std::move(row);
    }
  };

  long nthreads = std::max(1L, std::min(threads, steps));
  if (nthreads == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (long t = 0; t < nthreads; ++t) pool.emplace_back(worker, t, nthreads);
    for (auto& th : pool) th.join();
  }

  for (long i = 1; i < steps; ++i)
    rows[i].transition = !(rows[i].argmin == rows[i - 1].argmin);
  return rows;
}

}  // namespace brjuno::minima
