#pragma once

#include <optional>

#include "brjuno/cf.hpp"
#include "brjuno/errors.hpp"
#include "brjuno/real.hpp"

namespace brjuno {

struct SigmaParam {
  Real sigma;
  long digits = kDefaultDigits;

  SigmaParam(const Real& s, long d = kDefaultDigits) : sigma(s), digits(d) {
    if (!(sigma > Real(0L, sigma.prec()))) throw DomainError("sigma must be > 0");
  }
  static SigmaParam from_decimal(const std::string& s, long digits = kDefaultDigits) {
    return SigmaParam(Real::from_decimal(s, bits_for_digits(digits)), digits);
  }
  mpfr_prec_t prec() const { return bits_for_digits(digits); }
};

/// Certified bracket for a value; hi may be +inf (no upper bound known).
struct Enclosure {
  Real lo, hi;
  Real width() const { return hi - lo; }
  bool contains(const Real& v) const { return lo <= v && v <= hi; }
};

enum class EvalMethod { kClosedForm, kEnclosure, kLowerOnly };

struct EvalReport {
  Enclosure value;
  long depth_used = 0;
  Real partial_sum;
  Real beta_K;
  EvalMethod method = EvalMethod::kEnclosure;
};

/// x^{-1/sigma} as exp(-log(x)/sigma).
Real inv_power(const Real& x, const Real& sigma);

/// Partial sum B_sigma^{(K)} = sum_{j=0..K} beta_{j-1} x_j^{-1/sigma},
/// with beta_K.  Works from an already expanded table.
std::pair<Real, Real> partial_sum(const ConvergentTable& table, const SigmaParam& sigma,
                                  long K);
std::pair<Real, Real> partial_sum(const CFSpec& spec, const SigmaParam& sigma, long K);

/// Exact closed form at an eventually periodic point: preperiod removed via
/// the truncation identity, pure period summed by B = B^{(p-1)}/(1 - beta_{p-1}).
EvalReport eval_periodic_exact(const CFSpec& spec, const SigmaParam& sigma);

/// Certified bracket from a depth-K partial sum: lower bound via the
/// universal floor b*(sigma), upper bound via the Fibonacci tail constant
/// when the tail quotients are bounded by M.
EvalReport eval_enclosure(const CFSpec& spec, const SigmaParam& sigma, long K,
                          std::optional<long> M = std::nullopt);

/// |B(x) - x^{-1/sigma} - x B(A(x))| for a periodic spec (closed forms on
/// both sides).
Real functional_equation_residual(const CFSpec& spec, const SigmaParam& sigma);

/// Reciprocal Fibonacci constant sum_{j>=1} 1/F_j, rounded up.
Real fibonacci_tail_constant(mpfr_prec_t prec);

/// Tail bound T(M, sigma) = (M+1)^{1/sigma} * sum_{j>=0} 1/F_{j+1}: an upper
/// bound for B_sigma of any point whose quotients are all <= M.
Real tail_bound(long M, const SigmaParam& sigma);

}  // namespace brjuno
