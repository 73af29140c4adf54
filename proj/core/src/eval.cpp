#include "brjuno/eval.hpp"

#include <algorithm>

#include "brjuno/bounds.hpp"
#include "brjuno/errors.hpp"

namespace brjuno {

Real inv_power(const Real& x, const Real& sigma) {
  if (!(x > Real(0L, x.prec()))) throw DomainError("inv_power: x must be > 0");
  return exp(-log(x) / sigma);
}

std::pair<Real, Real> partial_sum(const ConvergentTable& table, const SigmaParam& sigma,
                                  long K) {
  if (K < 0) throw DomainError("partial_sum: K must be >= 0");
  if (K > table.depth) {
    if (table.truncated)
      throw PrecisionExhaustedError("float seed certified only to depth " +
                                    std::to_string(table.depth));
    throw DomainError("partial_sum: K exceeds table depth");
  }
  mpfr_prec_t prec = sigma.prec();
  Real sum(0L, prec);
  for (long j = 0; j <= K; ++j) sum = sum + table.bb(j - 1) * inv_power(table.xx(j), sigma.sigma);
  return {sum, table.bb(K)};
}

std::pair<Real, Real> partial_sum(const CFSpec& spec, const SigmaParam& sigma, long K) {
  ConvergentTable t = expand(spec, K, sigma.prec());
  return partial_sum(t, sigma, K);
}

namespace {

// Closed form for a *purely periodic* table expanded to depth p-1:
// B = B^{(p-1)} / (1 - beta_{p-1}).
Real pure_periodic_value(const ConvergentTable& t, const SigmaParam& sigma, long p) {
  auto [bp, betap] = partial_sum(t, sigma, p - 1);
  return bp / (Real(1L, sigma.prec()) - betap);
}

}  // namespace

EvalReport eval_periodic_exact(const CFSpec& spec, const SigmaParam& sigma) {
  spec.validate();
  if (!spec.is_periodic())
    throw InvalidSpecError("eval_periodic_exact requires an eventually periodic spec");
  mpfr_prec_t prec = sigma.prec();
  long d = static_cast<long>(spec.prefix.size());
  long p = static_cast<long>(spec.period.size());

  CFSpec tail = spec.shifted(d);
  ConvergentTable tail_table = expand(tail, std::max<long>(p - 1, 0), prec);
  Real tail_value = pure_periodic_value(tail_table, sigma, p);

  Real value(prec);
  Real head_sum(0L, prec), beta_head(1L, prec);
  long depth_used = p - 1;
  if (d == 0) {
    value = tail_value;
  } else {
    ConvergentTable t = expand(spec, d - 1, prec);
    auto [bs, betas] = partial_sum(t, sigma, d - 1);
    head_sum = bs;
    beta_head = betas;
    value = head_sum + beta_head * tail_value;
    depth_used = d - 1;
  }

  // Width contract: <= 10^{1-digits} * value.
  Real pad = value * pow(Real(10L, prec), Real(-sigma.digits, prec));
  EvalReport rep;
  rep.value = Enclosure{value - pad, value + pad};
  rep.depth_used = depth_used;
  rep.partial_sum = head_sum;
  rep.beta_K = beta_head;
  rep.method = EvalMethod::kClosedForm;
  return rep;
}

Real fibonacci_tail_constant(mpfr_prec_t prec) {
  // sum_{j>=1} 1/F_j; terms decay geometrically, stop when below 2^-prec,
  // then round the tail allowance upward.
  Real sum(0L, prec);
  mpz_class f1 = 1, f2 = 1;
  Real cutoff(prec);
  mpfr_set_ui_2exp(cutoff.raw(), 1, -static_cast<mpfr_exp_t>(prec), MPFR_RNDU);
  while (true) {
    Real term = Real(1L, prec) / Real(f1, prec);
    sum = sum + term;
    if (term < cutoff) break;
    mpz_class f3 = f1 + f2;
    f1 = f2;
    f2 = f3;
  }
  return sum + cutoff + cutoff;
}

Real tail_bound(long M, const SigmaParam& sigma) {
  if (M < 1) throw DomainError("tail_bound: M must be >= 1");
  mpfr_prec_t prec = sigma.prec();
  return inv_power(Real(1L, prec) / Real(M + 1, prec), sigma.sigma) *
         fibonacci_tail_constant(prec);
}

EvalReport eval_enclosure(const CFSpec& spec, const SigmaParam& sigma, long K,
                          std::optional<long> M) {
  if (K < 1) throw DomainError("eval_enclosure: K must be >= 1");
  spec.validate();
  mpfr_prec_t prec = sigma.prec();
  ConvergentTable t = expand(spec, K, prec);
  long Keff = std::min<long>(K, t.depth);
  if (Keff < 1) throw PrecisionExhaustedError("float seed certified to depth < 1");

  Real bstar = bounds::b_star(sigma.sigma);
  Real T(prec);
  bool have_hi = M.has_value();
  if (have_hi) T = tail_bound(*M, sigma);

  // Running bounds over j = 1..Keff keep the enclosures nested in K.
  Real sum(0L, prec);
  Real lo(prec), hi = Real::pos_inf(prec);
  Real last_sum(0L, prec), last_beta(1L, prec);
  bool first = true;
  for (long j = 0; j <= Keff; ++j) {
    sum = sum + t.bb(j - 1) * inv_power(t.xx(j), sigma.sigma);
    Real beta = t.bb(j);
    Real cand_lo = sum + beta * bstar;
    if (first || cand_lo > lo) lo = cand_lo;
    if (have_hi) {
      Real cand_hi = sum + beta * T;
      if (first || cand_hi < hi) hi = cand_hi;
    }
    first = false;
    last_sum = sum;
    last_beta = beta;
  }

  EvalReport rep;
  rep.value = Enclosure{lo, hi};
  rep.depth_used = Keff;
  rep.partial_sum = last_sum;
  rep.beta_K = last_beta;
  rep.method = have_hi ? EvalMethod::kEnclosure : EvalMethod::kLowerOnly;
  return rep;
}

Real functional_equation_residual(const CFSpec& spec, const SigmaParam& sigma) {
  spec.validate();
  if (!spec.is_periodic())
    throw InvalidSpecError("functional_equation_residual requires a periodic spec");
  mpfr_prec_t prec = sigma.prec();
  Real x = quadratic_from_periodic(spec, prec).approx;
  auto mid = [&](const EvalReport& r) {
    return (r.value.lo + r.value.hi) / Real(2L, prec);
  };
  Real bx = mid(eval_periodic_exact(spec, sigma));
  Real bax = mid(eval_periodic_exact(spec.shifted(1), sigma));
  return abs(bx - inv_power(x, sigma.sigma) - x * bax);
}

}  // namespace brjuno
