// Command line front end: evaluation, figure data, certificates.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "brjuno/bounds.hpp"
#include "brjuno/certified.hpp"
#include "brjuno/cf.hpp"
#include "brjuno/errors.hpp"
#include "brjuno/eval.hpp"
#include "brjuno/minima.hpp"
#include "brjuno/scaling.hpp"

using json = nlohmann::ordered_json;
using namespace brjuno;

namespace {

struct Options {
  long digits = 50;
  std::string out;
  std::string format = "csv";
  long threads = 1;
};

std::string fmt(const Real& r, long digits) { return r.str(digits); }

// All output is staged in a string so a run either fully writes its file or
// reports an error; also keeps stdout/file content byte-identical.
void emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(opt.out, std::ios::binary);
  if (!f) throw Error("cannot open output file: " + opt.out);
  f << text;
}

std::string svg_polyline(const std::vector<std::pair<double, double>>& pts,
                         const std::string& xlabel, const std::string& ylabel) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (auto& [x, y] : pts) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  if (!(xmax > xmin)) xmax = xmin + 1;
  if (!(ymax > ymin)) ymax = ymin + 1;
  const double W = 800, H = 600, M = 60;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\">\n";
  os << "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  os << "<line x1=\"60\" y1=\"540\" x2=\"740\" y2=\"540\" stroke=\"black\"/>\n";
  os << "<line x1=\"60\" y1=\"60\" x2=\"60\" y2=\"540\" stroke=\"black\"/>\n";
  os << "<text x=\"400\" y=\"580\" text-anchor=\"middle\">" << xlabel << "</text>\n";
  os << "<text x=\"20\" y=\"300\" text-anchor=\"middle\" transform=\"rotate(-90 20 300)\">"
     << ylabel << "</text>\n";
  os << "<polyline fill=\"none\" stroke=\"steelblue\" points=\"";
  char buf[64];
  for (auto& [x, y] : pts) {
    double px = M + (x - xmin) / (xmax - xmin) * (W - 2 * M);
    double py = H - M - (y - ymin) / (ymax - ymin) * (H - 2 * M);
    std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px, py);
    os << buf;
  }
  os << "\"/>\n</svg>\n";
  return os.str();
}

std::vector<long> rational_quotients(mpq_class x) {
  std::vector<long> out;
  while (x != 0) {
    mpq_class inv = mpq_class(1) / x;
    mpz_class fl = inv.get_num() / inv.get_den();
    out.push_back(fl.get_si());
    x = inv - mpq_class(fl);
  }
  return out;
}

// Lower/upper bracket of B_sigma around a rational grid point: certified
// lower bound for the whole final cylinder, optimistic upper bound assuming
// the continuation's quotients stay no larger than those already seen.
struct GridBracket {
  Real lo, hi;
  long depth;
};

GridBracket bracket_at(const mpq_class& xq, const SigmaParam& sp, long max_depth,
                       const Real& b_star) {
  mpfr_prec_t prec = sp.prec();
  std::vector<long> qs = rational_quotients(xq);
  if (qs.size() > 1) qs.pop_back();
  if (static_cast<long>(qs.size()) > max_depth) qs.resize(max_depth);
  long M = 1;
  Real S(0L, prec), beta(1L, prec), xi(xq, prec);
  long used = 0;
  for (long a : qs) {
    M = std::max(M, a);
    S = S + beta * inv_power(xi, sp.sigma);
    beta = beta * xi;
    xi = Real(1L, prec) / xi - Real(a, prec);
    ++used;
    if (xi.sign() <= 0) break;
  }
  return {S + beta * b_star, S + beta * tail_bound(M, sp), used};
}

long env_digits() {
  if (const char* e = std::getenv("BRJUNO_PRECISION")) {
    long d = std::atol(e);
    if (d >= 20) return d;
  }
  return 50;
}

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--precision", opt.digits, "working precision in decimal digits")
      ->check(CLI::Range(20L, 100000L));
  cmd->add_option("--out", opt.out, "output file (default: stdout)");
  cmd->add_option("--format", opt.format, "output format: csv|json|svg")
      ->check(CLI::IsMember({"csv", "json", "svg"}));
  cmd->add_option("--threads", opt.threads, "worker threads")->check(CLI::PositiveNumber);
}

// --- subcommands --------------------------------------------------------------

int run_eval(const Options& opt, const std::string& sigma_s, const std::string& point,
             long depth) {
  SigmaParam sp = SigmaParam::from_decimal(sigma_s, opt.digits);
  CFSpec spec = CFSpec::parse(point);
  EvalReport rep;
  if (spec.is_exact() && spec.is_periodic()) {
    rep = eval_periodic_exact(spec, sp);
  } else {
    rep = eval_enclosure(spec, sp, depth);
  }
  const char* method = rep.method == EvalMethod::kClosedForm ? "closed-form"
                       : rep.method == EvalMethod::kEnclosure ? "enclosure"
                                                              : "lower-only";
  std::ostringstream os;
  os << "lo=" << fmt(rep.value.lo, opt.digits) << "\n"
     << "hi=" << fmt(rep.value.hi, opt.digits) << "\n"
     << "method=" << method << "\n"
     << "depth=" << rep.depth_used << "\n";
  emit(opt, os.str());
  return 0;
}

int run_graph(const Options& opt, const std::string& sigma_s, long grid, long depth) {
  SigmaParam sp = SigmaParam::from_decimal(sigma_s, opt.digits);
  Real bs = bounds::b_star(sp.sigma);
  std::ostringstream os;
  std::vector<std::pair<double, double>> pts;
  os << "x,lo,hi,depth\n";
  for (long i = 0; i < grid; ++i) {
    mpq_class xq(2 * i + 1, 2 * grid);
    xq.canonicalize();
    GridBracket b = bracket_at(xq, sp, depth, bs);
    Real x(xq, sp.prec());
    os << fmt(x, opt.digits) << ',' << fmt(b.lo, opt.digits) << ','
       << fmt(b.hi, opt.digits) << ',' << b.depth << "\n";
    pts.push_back({x.to_double(), b.lo.to_double()});
  }
  if (opt.format == "svg")
    emit(opt, svg_polyline(pts, "x", "B lower enclosure"));
  else
    emit(opt, os.str());
  return 0;
}

int run_bounds(const Options& opt, const std::string& sigma_s, long grid, long depth) {
  SigmaParam sp = SigmaParam::from_decimal(sigma_s, opt.digits);
  bounds::BoundContext ctx = bounds::make_context(sp.sigma);
  std::ostringstream os;
  std::vector<std::pair<double, double>> pts;
  os << "x,g,gk,B_lo\n";
  for (long i = 0; i < grid; ++i) {
    mpq_class xq(2 * i + 1, 2 * grid);
    xq.canonicalize();
    Real x(xq, sp.prec());
    long k = floor(Real(1L, sp.prec()) / x).to_long();
    Real gv = bounds::g(x, ctx);
    std::string gk_s;
    try {
      Real gk = bounds::g_k(x, k, ctx);
      gk_s = gk.is_inf() ? "inf" : fmt(gk, opt.digits);
    } catch (const DomainError&) {
      gk_s = "";  // grid point sits on a cylinder boundary
    }
    GridBracket b = bracket_at(xq, sp, depth, ctx.b_star);
    os << fmt(x, opt.digits) << ',' << fmt(gv, opt.digits) << ',' << gk_s << ','
       << fmt(b.lo, opt.digits) << "\n";
    pts.push_back({x.to_double(), gv.to_double()});
  }
  if (opt.format == "svg")
    emit(opt, svg_polyline(pts, "x", "g(x)"));
  else
    emit(opt, os.str());
  return 0;
}

int run_phase(const Options& opt, const std::string& lo_s, const std::string& hi_s,
              long steps) {
  mpfr_prec_t prec = bits_for_digits(opt.digits);
  Real lo = Real::from_decimal(lo_s, prec), hi = Real::from_decimal(hi_s, prec);
  minima::CandidateFamily fam;
  auto rows = minima::phase_scan(lo, hi, steps, fam, opt.digits, opt.threads);
  std::ostringstream os;
  std::vector<std::pair<double, double>> pts;
  os << "sigma,argmin,min_lo,min_hi,family,transition,float_net_flag\n";
  for (auto& r : rows) {
    os << fmt(r.sigma, opt.digits) << ",\"" << r.argmin.str() << "\","
       << fmt(r.min_value.lo, opt.digits) << ',' << fmt(r.min_value.hi, opt.digits)
       << ',' << r.family << ',' << (r.transition ? 1 : 0) << ','
       << (r.float_net_flag ? 1 : 0) << "\n";
    pts.push_back({r.sigma.to_double(), r.min_value.lo.to_double()});
  }
  if (opt.format == "svg")
    emit(opt, svg_polyline(pts, "sigma", "min B"));
  else
    emit(opt, os.str());
  return 0;
}

int run_sigma_star(const Options& opt, long n, long n_hi) {
  std::ostringstream os;
  if (n_hi < n) n_hi = n;
  if (n_hi > n) os << "n,sigma_star,asymptote,residual\n";
  for (long m = n; m <= n_hi; ++m) {
    Real v = minima::sigma_star(m, opt.digits);
    Real a = minima::sigma_star_asymptote(m, opt.digits);
    if (n_hi > n)
      os << m << ',' << fmt(v, opt.digits) << ',' << fmt(a, opt.digits) << ','
         << fmt(v - a, opt.digits) << "\n";
    else
      os << fmt(v, opt.digits) << "\n"
         << "asymptote=" << fmt(a, opt.digits) << "\n";
  }
  emit(opt, os.str());
  return 0;
}

int run_localize(const Options& opt, long n, const std::string& sigma_s) {
  mpfr_prec_t prec = bits_for_digits(opt.digits);
  Real sigma = Real::from_decimal(sigma_s, prec);
  auto cert = minima::localize(n, sigma, opt.digits);
  json j;
  j["n"] = cert.n;
  j["sigma"] = fmt(cert.sigma, opt.digits);
  j["route"] = cert.route;
  j["xi"] = fmt(cert.xi, opt.digits);
  j["lower_bound_right_of_1_over_n_plus_1"] = fmt(cert.lhs, opt.digits);
  j["value_at_fixed_point"] = {{"lo", fmt(cert.rhs.lo, opt.digits)},
                               {"hi", fmt(cert.rhs.hi, opt.digits)}};
  j["margin"] = fmt(cert.margin, opt.digits);
  j["checks"] = json::array();
  for (auto& c : cert.checks)
    j["checks"].push_back(
        {{"name", c.name}, {"pass", c.pass}, {"value", fmt(c.value, opt.digits)}});
  j["passed"] = cert.passed;
  emit(opt, j.dump(2) + "\n");
  return cert.passed ? 0 : 1;
}

int run_verify_contraction(const Options& opt, long limit) {
  auto cert = certified::verify_contraction(limit, opt.digits);
  json j;
  j["domain"] = {{"lo", "0"}, {"hi", "0.1"}};
  j["pieces"] = cert.pieces.size();
  j["max_fprime"] = fmt(cert.max_fprime, opt.digits);
  j["maps_into"] = cert.maps_into;
  j["inconclusive"] = cert.inconclusive;
  j["passed"] = cert.passed;
  json bounds_arr = json::array();
  for (auto& p : cert.pieces)
    bounds_arr.push_back({{"x_lo", fmt(p.x.lo(), 12)},
                          {"x_hi", fmt(p.x.hi(), 12)},
                          {"fprime_lo", fmt(p.fprime.lo(), 12)},
                          {"fprime_hi", fmt(p.fprime.hi(), 12)}});
  j["subdivision"] = std::move(bounds_arr);
  emit(opt, j.dump(2) + "\n");
  if (cert.passed) return 0;
  return cert.inconclusive ? 2 : 1;
}

int run_verify_w_positive(const Options& opt, long n_lo, long n_hi) {
  auto cert = certified::check_w_positive(n_lo, n_hi, opt.digits);
  json j;
  j["n_lo"] = n_lo;
  j["n_hi"] = n_hi;
  j["passed"] = cert.passed;
  json rows = json::array();
  for (auto& r : cert.rows)
    rows.push_back({{"n", r.n},
                    {"margin_lo", fmt(r.margin.lo(), 12)},
                    {"margin_hi", fmt(r.margin.hi(), 12)},
                    {"digits", r.digits_used},
                    {"pass", r.pass}});
  j["rows"] = std::move(rows);
  emit(opt, j.dump(2) + "\n");
  return cert.passed ? 0 : 1;
}

int run_scaling(const Options& opt, long n, long steps, const std::string& seed) {
  scaling::ScalingRun run;
  if (seed.empty()) {
    run = scaling::run_orbit(n, steps, opt.digits);
  } else {
    mpq_class x1(seed);
    x1.canonicalize();
    run = scaling::run_orbit_rational(n, x1, steps, opt.digits);
  }
  std::ostringstream os;
  os << "k,x_k,delta_k,E_lo,E_hi,lambda_k\n";
  for (long k = 1; k <= steps; ++k) {
    os << k << ',' << fmt(run.orbit[k], opt.digits) << ','
       << fmt(run.delta[k], opt.digits) << ',' << fmt(run.energy[k].lo, opt.digits)
       << ',' << fmt(run.energy[k].hi, opt.digits) << ',';
    long lam = (k - 2) / 2;  // lambda index such that k == 2*lam+2
    if (k >= 4 && k % 2 == 0 && lam < static_cast<long>(run.lambdas.size()))
      os << fmt(run.lambdas[lam], opt.digits);
    os << "\n";
  }
  json j;
  if (steps >= 6 && steps % 2 == 0 && seed.empty()) {
    auto fit = scaling::estimate_exponent(n, steps,
                                          opt.digits > 60 ? opt.digits : 0);
    j["tau_hat"] = fmt(fit.tau_hat, opt.digits);
    j["c_hat"] = fmt(fit.c_hat, opt.digits);
    j["window"] = fit.window;
  } else {
    j["tau_hat"] = nullptr;
    j["c_hat"] = nullptr;
    j["window"] = json::array();
  }
  if (!opt.out.empty()) {
    emit(opt, os.str());
    std::cout << j.dump(2) << "\n";
  } else {
    emit(opt, os.str() + j.dump(2) + "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rigorous evaluation of the sigma-Brjuno function, its lower bounds, "
               "minimizers and scaling"};
  app.require_subcommand(1);

  Options opt;
  opt.digits = env_digits();

  std::string sigma_s = "1", point, lo_s = "0.5", hi_s = "3", seed;
  long depth = 40, grid = 1000, steps = 8, n = 2, n_hi = -1, limit = 16384;

  auto* eval_cmd = app.add_subcommand("eval", "evaluate B_sigma at a point");
  eval_cmd->add_option("--sigma", sigma_s, "sigma > 0")->required();
  eval_cmd->add_option("--point", point, "continued-fraction spec or decimal seed")
      ->required();
  eval_cmd->add_option("--depth", depth, "partial-sum depth for enclosures");
  add_common(eval_cmd, opt);

  auto* graph_cmd = app.add_subcommand("graph", "grid of lower enclosures of B_sigma");
  graph_cmd->add_option("--sigma", sigma_s)->required();
  graph_cmd->add_option("--grid", grid, "number of grid points");
  graph_cmd->add_option("--depth", depth);
  add_common(graph_cmd, opt);

  auto* bounds_cmd = app.add_subcommand("bounds", "g, cylinder bound and B samples");
  bounds_cmd->add_option("--sigma", sigma_s)->required();
  bounds_cmd->add_option("--grid", grid);
  bounds_cmd->add_option("--depth", depth);
  add_common(bounds_cmd, opt);

  auto* phase_cmd = app.add_subcommand("phase", "minimizer scan over a sigma range");
  phase_cmd->add_option("--sigma-lo", lo_s)->required();
  phase_cmd->add_option("--sigma-hi", hi_s)->required();
  phase_cmd->add_option("--steps", steps);
  add_common(phase_cmd, opt);

  auto* ss_cmd = app.add_subcommand("sigma-star", "transition value sigma*_n");
  ss_cmd->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  ss_cmd->add_option("--n-hi", n_hi, "emit a CSV table for n..n-hi");
  add_common(ss_cmd, opt);

  auto* loc_cmd = app.add_subcommand("localize", "certify the minimum lies left of 1/(n+1)");
  loc_cmd->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  loc_cmd->add_option("--sigma", sigma_s)->required();
  add_common(loc_cmd, opt);

  auto* verify_cmd = app.add_subcommand("verify", "machine-checked certificates");
  verify_cmd->require_subcommand(1);
  auto* vc_cmd = verify_cmd->add_subcommand("contraction",
                                            "F is a 1/2-contraction of [0, 1/10]");
  vc_cmd->add_option("--limit", limit, "subdivision budget");
  add_common(vc_cmd, opt);
  long wlo = 2, whi = 800;
  auto* wp_cmd = verify_cmd->add_subcommand("w-positive",
                                            "g(xi_n) > B_n(eta_{n+1}) margins");
  wp_cmd->add_option("--n-lo", wlo)->check(CLI::Range(2L, 1000000L));
  wp_cmd->add_option("--n-hi", whi)->check(CLI::PositiveNumber);
  add_common(wp_cmd, opt);

  auto* sc_cmd = app.add_subcommand("scaling", "cusp-scaling orbit and exponent fit");
  sc_cmd->add_option("--n", n)->check(CLI::Range(2L, 1000000L));
  sc_cmd->add_option("--steps", steps);
  sc_cmd->add_option("--seed", seed, "rational seed p/q for the one-sided probe mode");
  add_common(sc_cmd, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 64;
  }

  try {
    if (*eval_cmd) return run_eval(opt, sigma_s, point, depth);
    if (*graph_cmd) return run_graph(opt, sigma_s, grid, depth);
    if (*bounds_cmd) return run_bounds(opt, sigma_s, grid, depth);
    if (*phase_cmd) return run_phase(opt, lo_s, hi_s, steps);
    if (*ss_cmd) return run_sigma_star(opt, n, n_hi);
    if (*loc_cmd) return run_localize(opt, n, sigma_s);
    if (*vc_cmd) return run_verify_contraction(opt, limit);
    if (*wp_cmd) return run_verify_w_positive(opt, wlo, whi);
    if (*sc_cmd) return run_scaling(opt, n, steps, seed);
  } catch (const InvalidSpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  } catch (const PrecisionExhaustedError& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
