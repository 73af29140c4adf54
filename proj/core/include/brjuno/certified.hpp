#pragma once

#include <vector>

#include "brjuno/interval.hpp"

namespace brjuno::certified {

/// gamma(x) = (1+x^2)^x + ((x+x^2)/(1+x^2)) (1+x)^x
Interval gamma_fn(const Interval& x);
/// r(x) = (sqrt(1 + 4x^2/(1+x)^2) - 1)/2, evaluated in the conjugate form
/// r = u^2/(2(sqrt(1+u^2)+1)), u = 2x/(1+x), to avoid cancellation.
Interval r_fn(const Interval& x);
/// beta(x) = (1+x)^x (1+r)^x x/(x - (1+x)r); the denominator is computed as
/// x (1 - u/(sqrt(1+u^2)+1)) which is provably positive on (0, 1].
Interval beta_fn(const Interval& x);
/// w = gamma - beta; w(1/n) * n^{1/n} = g(xi_n) - B_n(eta_{n+1}).
Interval w_fn(const Interval& x);

/// Analytic derivatives (symbolic chain rule), used to cross-check the
/// rational Taylor models and for spot checks against divided differences.
Interval gamma_prime_fn(const Interval& x);
Interval beta_prime_fn(const Interval& x);
Interval w_prime_fn(const Interval& x);

struct PieceBound {
  Interval x;       // subinterval of [0, 1/10]
  Interval fprime;  // enclosure of F' there
};

struct ContractionCertificate {
  Interval domain;  // [0, 1/10]
  std::vector<PieceBound> pieces;
  Real max_fprime;        // max |F'| bound over the pieces
  bool maps_into = false;  // F(J) subset of J
  bool passed = false;
  bool inconclusive = false;
};

/// Certifies that F(x) = x - 2w(x)/x^2 is a contraction of J = [0, 1/10]
/// with |F'| <= 1/2, by adaptive bisection; F' is enclosed through a Taylor
/// model with exact rational coefficients, so the x^{-3} cancellation at 0
/// is removed identically.  Since F(0) = 0 and the fixed point is unique,
/// this proves w > 0 on (0, 1/10].
ContractionCertificate verify_contraction(long subdivision_limit, long digits = 60);

struct WPositiveRow {
  long n = 0;
  Interval margin;  // g(xi_n) - B_n(eta_{n+1})
  long digits_used = 0;
  bool pass = false;
};

struct WPositiveCertificate {
  std::vector<WPositiveRow> rows;
  bool passed = false;
};

/// Certifies g(xi_n) > B_n(eta_{n+1}) for each n in [n_lo, n_hi], retrying
/// at doubled precision (up to 4 times) since the margin shrinks like n^-3.
WPositiveCertificate check_w_positive(long n_lo, long n_hi, long digits = kDefaultDigits);

/// Psi(x) = 1 + x + x^2 - (1+x)^{1+x}
Interval psi_fn(const Interval& x);

struct PsiCertificate {
  bool passed = false;
  long pieces = 0;
  Real max_value;  // largest upper bound of Psi seen
};

/// Certifies Psi < 0 on (0, 1] by adaptive interval subdivision (near 0 the
/// leading cancellation is removed by a Taylor model of Psi/x^2).
PsiCertificate check_psi_negative(long digits = kDefaultDigits);

}  // namespace brjuno::certified
