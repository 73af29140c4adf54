#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "brjuno/real.hpp"

namespace brjuno {

constexpr long kQuotientCap = 1000000000000L;  // 10^12

/// Exact continued-fraction description of a point in (0,1): a finite
/// prefix of partial quotients plus either a periodic tail or a decimal
/// seed.  Text form: "[0; a1, a2, ..., (b1, ..., bp)]" or a plain decimal.
struct CFSpec {
  std::vector<long> prefix;
  std::vector<long> period;
  std::optional<std::string> float_seed;  // decimal in (0,1)

  bool is_exact() const { return !float_seed.has_value(); }
  bool is_periodic() const { return !period.empty(); }
  /// Throws InvalidSpecError on any violated invariant.
  void validate() const;

  /// Spec denoting the Gauss shift A^n of this point (drop n quotients).
  CFSpec shifted(long n) const;

  static CFSpec parse(const std::string& text);
  std::string str() const;

  bool operator==(const CFSpec& o) const = default;
};

/// Convergents p_n/q_n, Gauss iterates x_n and products beta_n up to a
/// depth.  Index layout: p[k], q[k] hold p_{k-2}, q_{k-2} (so the k=0,1
/// slots are the seed values); x[k] is x_k; beta[k] holds beta_{k-1}.
struct ConvergentTable {
  long depth = 0;
  std::vector<mpz_class> p, q;  // p_{-2}..p_K at offsets 0..K+2
  std::vector<Real> x;          // x_0..x_K
  std::vector<Real> beta;       // beta_{-1}..beta_K at offsets 0..K+1
  std::vector<long> a;          // a_1..a_K at offsets 1..K (a[0] unused)
  bool exact = true;
  bool truncated = false;  // float seed ran out of certified digits

  const mpz_class& pp(long n) const { return p[n + 2]; }  // p_n, n >= -2
  const mpz_class& qq(long n) const { return q[n + 2]; }  // q_n, n >= -2
  const Real& xx(long n) const { return x[n]; }           // x_n, n >= 0
  const Real& bb(long n) const { return beta[n + 1]; }    // beta_n, n >= -1
};

/// Integer quadratic a t^2 + b t + c = 0 with exactly one root in the open
/// bracket (lo, hi).  For a preperiodic point the Galois conjugate can also
/// land in (0,1), so the bracket is the image of the periodic tail's range
/// under the prefix Moebius map, which the conjugate provably avoids.
struct QuadraticValue {
  mpz_class a, b, c;
  mpq_class lo = 0, hi = 1;
  Real approx;

  /// The bracketed root recomputed at the given precision.
  Real root(mpfr_prec_t prec) const;
};

/// One Gauss-map step: a = floor(1/x), x' = 1/x - a.  x' == 0 signals a
/// rational input.
std::pair<long, Real> gauss_step(const Real& x);

ConvergentTable expand(const CFSpec& spec, long depth,
                       mpfr_prec_t prec = bits_for_digits(kDefaultDigits));

/// Fixed point eta_n = [0; overline(n)], root of t^2 + n t - 1.
QuadraticValue eta(long n, mpfr_prec_t prec = bits_for_digits(kDefaultDigits));

QuadraticValue quadratic_from_periodic(const CFSpec& spec,
                                       mpfr_prec_t prec = bits_for_digits(kDefaultDigits));

/// Empirical Diophantine exponent witness: max of log q_{n+1}/log q_n - 1
/// over the last quarter of the table depth.
double growth_exponent(const ConvergentTable& table);

}  // namespace brjuno
