#pragma once

#include <string>
#include <vector>

#include "brjuno/bounds.hpp"
#include "brjuno/cf.hpp"
#include "brjuno/eval.hpp"
#include "brjuno/interval.hpp"

namespace brjuno::minima {

/// Crossing value sigma*_n = log(eta_n/eta_{n+1}) / log((1-eta_{n+1})/(1-eta_n)),
/// where B_sigma(eta_n) = B_sigma(eta_{n+1}).
Real sigma_star(long n, long digits = kDefaultDigits);

/// Independent route: bisection on sigma -> B_sigma(eta_n) - B_sigma(eta_{n+1}).
Real sigma_star_bisect(long n, long digits = kDefaultDigits, long bits_tol = 100);

/// Asymptote n - 1/2 + 5/(6n).
Real sigma_star_asymptote(long n, long digits = kDefaultDigits);

struct CheckResult {
  std::string name;
  bool pass = false;
  Real value;  // the quantity whose sign/size was checked
};

struct LocalizationCertificate {
  long n = 0;
  Real sigma;
  Real xi;          // 1/(n + 1/n); for n = 1 the certified floor's argmin proxy
  Real lhs;         // certified lower bound for B over [1/(n+1), 1]
  Enclosure rhs;    // B_sigma(eta_{n+1})
  Real margin;      // lhs - rhs.hi
  std::string route;  // "xi", "g1-polynomial" or "cylinder-bnb"
  std::vector<CheckResult> checks;
  bool passed = false;
};

/// Certifies min over [1/(n+1), 1] of B_sigma > B_sigma(eta_{n+1}).
/// n >= 2 uses the xi_n comparison; n = 1 uses the g_1 minimum when it
/// separates, else a certified cylinder branch-and-bound.
LocalizationCertificate localize(long n, const Real& sigma, long digits = kDefaultDigits);

struct MonotonicityCertificate {
  bool precondition_ok = false;  // sigma < n + eta_{n+1}
  std::vector<CheckResult> checks;
  bool passed = false;
};

/// h_sigma decreasing on (0, eta_{n+1}], f_sigma increasing on
/// [eta_{n+1}, 1/(n+1)], f'_sigma(eta_{n+1}) > 0 via the closed form.
MonotonicityCertificate monotonicity_checks(long n, const Real& sigma,
                                            long digits = kDefaultDigits);

struct CandidateFamily {
  long max_period1_quotient = 30;
  long max_period2_quotient = 30;
  long float_grid_points = 10000;
  long float_depth = 40;
};

struct PhaseRow {
  Real sigma;
  CFSpec argmin;
  Enclosure min_value;
  std::string family;
  bool transition = false;       // argmin differs from previous grid row
  bool float_net_flag = false;   // a float-grid point undercut the minimum
                                 // by more than its own tail width
};

std::vector<PhaseRow> phase_scan(const Real& sigma_lo, const Real& sigma_hi, long steps,
                                 const CandidateFamily& family,
                                 long digits = kDefaultDigits, long threads = 1);

/// Certified lower bound for min B_sigma over the cylinder [1/(k0+1), 1/k0]:
/// returns true iff interval branch-and-bound proves min > target.
struct CylinderFloor {
  bool certified = false;
  Real floor;       // least leaf lower bound reached
  long leaves = 0;
  long max_depth_hit = 0;
};
CylinderFloor certified_cylinder_floor(long k0, const Real& sigma, const Real& target,
                                       long digits, long max_depth = 14,
                                       long branch_cap = 12);

}  // namespace brjuno::minima
