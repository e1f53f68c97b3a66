// Acceptance run: one PASS/FAIL line per criterion, tolerances fixed below.
//
//   acceptance [--expect-fail i,j,...]
//
// Exit status is 0 when the failing criteria are exactly the expected ones.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "frwave/bifurcation.hpp"
#include "frwave/development.hpp"
#include "frwave/elliptic.hpp"
#include "frwave/error.hpp"
#include "frwave/galerkin.hpp"
#include "frwave/linearization.hpp"
#include "frwave/range.hpp"

using namespace frwave;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double pi = std::numbers::pi;

// Reference root of (7+m)K(m) - 6E(m), 30-digit arithmetic.
constexpr double quartic_root_ref = -0.25544422736786543534;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome criterion1() {
  Outcome o;
  const auto t0 = Clock::now();
  const double m = bifurcation::quartic_modulus();
  const double secs = seconds_since(t0);
  const bool in_interval = m > -0.30 && m < -0.28;
  const bool precise = std::abs(m - quartic_root_ref) < 1e-12;
  const bool fast = secs < 1.0;
  o.pass = in_interval && precise && fast;
  o.detail = "root " + fmt("%.16f", m) + (in_interval ? " in" : " NOT in") + " (-0.30, -0.28); " +
             "|m - ref| " + fmt("%.1e", std::abs(m - quartic_root_ref)) + (precise ? " ok" : " BAD") +
             "; " + fmt("%.2e", secs) + " s";
  return o;
}

Outcome criterion2() {
  double rec = 0.0, pyth = 0.0, der = 0.0;
  for (double m : {-10.0, -2.0, -0.5}) {
    const double mu = m / (m - 1.0);
    rec = std::max(rec, std::abs(elliptic::complete_K(m) - elliptic::complete_K(mu) / std::sqrt(1 - m)));
    rec = std::max(rec, std::abs(elliptic::complete_E(m) - std::sqrt(1 - m) * elliptic::complete_E(mu)));
  }
  for (double m : {-10.0, -2.0, -0.5, 0.3, 0.9}) {
    const double p = 4.0 * elliptic::complete_K(m);
    for (int i = 0; i < 256; ++i) {
      const auto s = elliptic::jacobi(p * i / 256.0, m);
      pyth = std::max(pyth, std::abs(s.dn * s.dn + m * s.sn * s.sn - 1.0));
      const double d = elliptic::sn_derivative(s);
      der = std::max(der, std::abs(d * d - (1 - s.sn * s.sn) * (1 - m * s.sn * s.sn)));
    }
  }
  Outcome o;
  o.pass = rec < 1e-12 && pyth < 1e-10 && der < 1e-10;
  o.detail = "reciprocal " + fmt("%.1e", rec) + ", dn^2+m sn^2 " + fmt("%.1e", pyth) +
             ", sn'^2 " + fmt("%.1e", der);
  return o;
}

Outcome criterion3() {
  std::vector<bifurcation::WaveProfile> ps{bifurcation::solve_quartic_profile(1.0)};
  for (double lam : {0.3, 1.0})
    for (int s : {1, -1})
      if (!(s == 1 && lam >= 1.0)) ps.push_back(bifurcation::solve_cubic_profile(lam, s));
  double worst = 0.0;
  for (const auto& g : ps) worst = std::max({worst, g.ode_residual(), g.elliptic_bridge_residual()});
  Outcome o;
  o.pass = worst < 1e-8;
  o.detail = std::to_string(ps.size()) + " profiles, sup residual " + fmt("%.1e", worst);
  return o;
}

std::vector<double> random_odd(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> nd;
  double b[6];
  for (double& x : b) x = nd(rng);
  std::vector<double> f(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int k = 1; k <= 6; ++k) f[static_cast<size_t>(i)] += b[k - 1] * std::sin(k * 2 * pi * i / n);
  return f;
}

double mean_product(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s / static_cast<double>(a.size());
}

Outcome criterion4() {
  const auto g = bifurcation::solve_quartic_profile(1.0);
  const auto c = linearization::certify(g);
  double ident = 0.0;
  for (const char* id : {"id1", "id2", "coefficienti_gLI1", "coefficienti_gLI2",
                         "coefficienti_g3LI1", "coefficienti_g3LI2"})
    ident = std::max(ident, c.identity_residuals.at(id));
  const auto pair = linearization::fundamental_pair(g);
  std::mt19937_64 rng(2718);
  double sym = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto f1 = random_odd(rng, pair.n);
    const auto f2 = random_odd(rng, pair.n);
    sym = std::max(sym, std::abs(mean_product(f1, linearization::green_apply(pair, f2)) -
                                 mean_product(f2, linearization::green_apply(pair, f1))));
  }
  Outcome o;
  o.pass = ident < 1e-7 && sym < 1e-8;
  o.detail = "identities " + fmt("%.1e", ident) + ", symmetry over 20 pairs " + fmt("%.1e", sym);
  return o;
}

Outcome criterion5() {
  Outcome o;
  double dq = 0.0, dc = 0.0;
  bool signs = true;
  {
    const auto pair = linearization::fundamental_pair(bifurcation::solve_quartic_profile(1.0));
    dq = std::abs(pair.rho - pair.rho_closed) / std::max(1.0, std::abs(pair.rho));
    signs = signs && pair.rho > 0;
  }
  for (double lam : {0.2, 0.4, 0.6})
    for (int s : {1, -1}) {
      if (s == -1 && lam < 0.5) continue;
      const auto pair = linearization::fundamental_pair(bifurcation::solve_cubic_profile(lam, s));
      dc = std::max(dc, std::abs(pair.rho - pair.rho_mean_form) / std::max(1.0, std::abs(pair.rho)));
      signs = signs && (s == 1 ? pair.rho < 0 : pair.rho > 0);
    }
  for (double lam : {1.0, 2.0, 5.0}) {
    const auto pair = linearization::fundamental_pair(bifurcation::solve_cubic_profile(lam, -1));
    dc = std::max(dc, std::abs(pair.rho - pair.rho_mean_form) / std::max(1.0, std::abs(pair.rho)));
    signs = signs && pair.rho > 0;
  }
  o.pass = dq < 1e-8 && dc < 1e-8 && signs;
  o.detail = "quartic closed form " + fmt("%.1e", dq) + ", cubic mean form " + fmt("%.1e", dc) +
             ", signs " + (signs ? "as stated" : "WRONG");
  return o;
}

Outcome criterion6() {
  Outcome o;
  const auto cq = linearization::certify(bifurcation::solve_quartic_profile(1.0));
  bool ok = cq.accepted() && cq.B_of_g > 0;
  int sign_ok = 0, points = 0;
  double spread = 0.0;
  std::vector<std::pair<double, int>> grid;
  for (double lam : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6}) grid.emplace_back(lam, 1);
  for (double lam : {0.5, 0.7, 0.9, 1.0, 2.0, 5.0}) grid.emplace_back(lam, -1);
  for (auto [lam, s] : grid) {
    const auto c = linearization::certify(bifurcation::solve_cubic_profile(lam, s));
    ++points;
    if ((c.A0 > 0 ? 1 : -1) == -s) ++sign_ok;
    for (const char* k : {"A0_closed", "A0_intermediate", "A0_integral_route"})
      if (c.informational.count(k)) spread = std::max(spread, std::abs(c.A0 - c.informational.at(k)));
    ok = ok && c.accepted();
  }
  // ill-conditioned points: sign of the closed form only, not gated
  std::string info;
  for (auto [lam, s] : {std::pair{0.7, 1}, std::pair{0.8, 1}, std::pair{0.9, 1}, std::pair{0.1, -1},
                        std::pair{0.2, -1}, std::pair{0.3, -1}}) {
    std::string mark = "?";
    try {
      const auto c = linearization::certify(bifurcation::solve_cubic_profile(lam, s));
      if (c.informational.count("A0_closed") && std::isfinite(c.informational.at("A0_closed")))
        mark = (c.informational.at("A0_closed") > 0 ? 1 : -1) == -s ? "ok" : "flip";
    } catch (const std::exception&) {
    }
    info += " " + fmt("%.1f", lam) + (s > 0 ? "+" : "-") + ":" + mark;
  }
  o.pass = ok && sign_ok == points && spread < 1e-7;
  o.detail = "B(g) " + fmt("%.6f", cq.B_of_g) + ", sign(A0) = -s* at " + std::to_string(sign_ok) +
             "/" + std::to_string(points) + ", A0 route spread " + fmt("%.1e", spread) +
             "; excluded (info)" + info;
  return o;
}

Outcome criterion7() {
  Outcome o;
  double dist = 0.0, smin = 1e300, drift = 0.0;
  bool ok = true;
  const std::vector<bifurcation::WaveProfile> ps{
      bifurcation::solve_quartic_profile(1.0), bifurcation::solve_cubic_profile(0.3, 1),
      bifurcation::solve_cubic_profile(0.6, 1), bifurcation::solve_cubic_profile(1.0, -1),
      bifurcation::solve_cubic_profile(2.0, -1)};
  for (const auto& g : ps) {
    const auto r = galerkin::oracle_check(g, 64);
    dist = std::max(dist, r.sup_distance);
    smin = std::min(smin, r.min_singular_value);
    drift = std::max(drift, std::abs(r.min_singular_value_doubled / r.min_singular_value - 1));
    ok = ok && r.passed();
  }
  o.pass = ok && dist < 1e-7 && smin > 1e-3 && drift <= 0.1;
  o.detail = std::to_string(ps.size()) + " profiles at N=64: sup distance " + fmt("%.1e", dist) +
             ", sigma_min " + fmt("%.3f", smin) + ", drift under doubling " + fmt("%.1e", drift);
  return o;
}

Outcome criterion8(double& exponent_spread) {
  Outcome o;
  const FourierSeries1D eta(std::vector<double>{1.0, 0.0, 0.3});
  development::DevelopmentInput q;
  development::DevelopmentInput c;
  c.kase = CaseTag::quadratic_cubic;
  c.a3_cos = {0.5};
  double worst_exp = 0.0, kin = 0.0;
  bool ok = true;
  for (const auto& in : {q, c}) {
    auto run = in;
    for (int s : (in.kase == CaseTag::quartic ? std::vector<int>{1} : std::vector<int>{1, -1})) {
      run.s_star = s;
      const auto r = development::verify_development(run, eta, {4, 8, 16, 32});
      worst_exp = std::max(worst_exp, std::abs(r.fitted_exponent - 2.0));
      for (double d : r.kinetic_defect) kin = std::max(kin, d);
      ok = ok && r.passed();
    }
  }
  exponent_spread = worst_exp;
  o.pass = ok && worst_exp <= 0.3 && kin <= 1e-13;
  o.detail = "|exponent - 2| " + fmt("%.1e", worst_exp) + ", kinetic identity " + fmt("%.1e", kin);
  return o;
}

Outcome criterion9() {
  Outcome o;
  struct Case {
    range::Nonlinearity f;
    int order;
    std::vector<double> deltas;
  };
  std::vector<Case> cases(3);
  cases[0].order = 16;
  cases[0].deltas = {0.1, 0.2, 0.3};
  for (int i : {1, 2}) {
    cases[static_cast<size_t>(i)].f.kase = CaseTag::quadratic_cubic;
    cases[static_cast<size_t>(i)].f.a2 = 1.0;
    cases[static_cast<size_t>(i)].order = 32;
    cases[static_cast<size_t>(i)].deltas = {0.02, 0.05};
  }
  cases[1].f.a3_cos = {0.7};
  cases[1].f.s_star = 1;
  cases[2].f.a3_cos = {0.9};
  cases[2].f.s_star = -1;

  const int n = 2;
  double defect = 0.0, bif = 0.0, res = 0.0;
  int solved = 0, attempted = 0;
  for (const auto& cs : cases) {
    bifurcation::NonlinearityCoefficients nc;
    nc.kase = cs.f.kase;
    nc.a2 = cs.f.a2;
    nc.a3_mean = cs.f.a3_cos[0];
    nc.a4 = cs.f.a4;
    for (const auto& g : bifurcation::solve_profiles(nc)) {
      if (cs.f.kase != CaseTag::quartic && g.s_star() != cs.f.s_star) continue;
      const auto b = range::solve_bifurcation(cs.f, galerkin::series_from_profile(g, cs.order), n);
      bif = std::max(bif, b.residual);
      range::RangeConfig cfg;
      cfg.n = n;
      const auto r0 = range::range_solve(cs.f, b.v(), cfg);
      defect = std::max(defect, r0.closed_form_defect / (1.0 + r0.w.max_abs()));
      for (double d : cs.deltas) {
        cfg.delta = d;
        const double om = bifurcation::frequency_map(d, cs.f.kase, cs.f.s_star);
        if (range::min_small_divisor(om, n, cfg.L, cfg.J).value <= 1e-3) continue;
        ++attempted;
        try {
          const auto r = range::range_solve(cs.f, b.v(), cfg);
          res = std::max(res, r.residual);
          if (r.residual < 1e-9) ++solved;
        } catch (const ConvergenceError&) {
        }
      }
    }
  }
  o.pass = defect < 1e-14 && bif < 1e-8 && solved == attempted && res < 1e-9;
  o.detail = "delta=0 defect " + fmt("%.1e", defect) + ", 0th-order residual " + fmt("%.1e", bif) +
             ", delta>0 solves " + std::to_string(solved) + "/" + std::to_string(attempted) +
             " (max residual " + fmt("%.1e", res) + ")";
  return o;
}

std::set<int> parse_list(const char* s) {
  std::set<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.insert(std::stoi(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::strcmp(argv[i], "--expect-fail") == 0) expected = parse_list(argv[i + 1]);

  const auto t0 = Clock::now();
  std::vector<std::function<Outcome()>> crit{criterion1, criterion2, criterion3, criterion4,
                                             criterion5, criterion6, criterion7};
  std::vector<Outcome> out;
  for (auto& f : crit) {
    try {
      out.push_back(f());
    } catch (const std::exception& e) {
      out.push_back({false, std::string("error: ") + e.what()});
    }
  }
  double spread = 0.0;
  Outcome c8;
  Outcome c9;
  try {
    c8 = criterion8(spread);
  } catch (const std::exception& e) {
    c8 = {false, std::string("error: ") + e.what()};
  }
  try {
    c9 = criterion9();
  } catch (const std::exception& e) {
    c9 = {false, std::string("error: ") + e.what()};
  }
  const double total = seconds_since(t0);
  c8.pass = c8.pass && total < 120.0;
  c8.detail += "; acceptance run " + fmt("%.1f", total) + " s";
  out.push_back(c8);
  out.push_back(c9);

  std::set<int> failed;
  for (size_t i = 0; i < out.size(); ++i) {
    std::printf("criterion %zu: %s  %s\n", i + 1, out[i].pass ? "PASS" : "FAIL", out[i].detail.c_str());
    if (!out[i].pass) failed.insert(static_cast<int>(i + 1));
  }
  std::printf("%zu/%zu criteria pass\n", out.size() - failed.size(), out.size());
  return failed == expected ? 0 : 1;
}
