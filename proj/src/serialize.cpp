#include "frwave/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "frwave/error.hpp"

namespace frwave::io {

namespace {

constexpr double pi = std::numbers::pi;

json field_summary(const field2d::FourierSeries2D& u) {
  return {{"L", u.L()}, {"J", u.J()}, {"max_abs_coefficient", u.max_abs()},
          {"l2_squared", u.l2_squared()}};
}

}  // namespace

json to_json(const bifurcation::WaveProfile& g) {
  json j;
  j["case"] = std::string(to_string(g.case_tag()));
  j["equation"] = std::string(to_string(g.equation().kind));
  j["V"] = g.V();
  j["Omega"] = g.Omega();
  j["m"] = g.m();
  j["s_star"] = g.s_star();
  j["lambda"] = g.lambda();
  j["residual_sup"] = g.residual_sup();
  return j;
}

bifurcation::WaveProfile profile_from_json(const json& j) {
  try {
    EquationSpec eq;
    eq.kind = equation_from_string(j.at("equation").get<std::string>());
    eq.s_star = j.at("s_star").get<int>();
    eq.lambda = j.at("lambda").get<double>();
    return bifurcation::WaveProfile::restore(eq, j.at("V").get<double>(),
                                             j.at("Omega").get<double>(), j.at("m").get<double>(),
                                             j.value("residual_sup", 0.0));
  } catch (const json::exception& e) {
    throw DomainError(std::string("profile json: ") + e.what());
  }
}

json to_json(const linearization::NondegeneracyCertificate& c) {
  json j;
  j["equation"] = std::string(to_string(c.equation));
  j["rho"] = c.rho;
  if (c.equation == Equation::quartic_A) {
    j["B_of_g"] = c.B_of_g;
    j["checks"]["B_of_g > 0"] = c.B_of_g > 0.0 ? "pass" : "fail";
  } else {
    j["A0"] = c.A0;
  }
  j["min_singular_value"] = c.min_singular_value;
  j["hill_only_singular_value"] = c.hill_only_singular_value;
  j["identity_residuals"] = c.identity_residuals;
  j["informational"] = c.informational;
  j["failures"] = c.failures;
  j["accepted"] = c.accepted();
  return j;
}

json to_json(const galerkin::OracleReport& r) {
  json j;
  j["equation"] = std::string(to_string(r.equation.kind));
  j["order"] = r.order;
  j["iterations"] = r.iterations;
  j["residual_norm"] = r.residual_norm;
  j["pointwise_residual"] = r.pointwise_residual;
  j["sup_distance"] = r.sup_distance;
  j["min_singular_value"] = r.min_singular_value;
  j["min_singular_value_doubled"] = r.min_singular_value_doubled;
  j["checks"]["sup-norm agreement < 1e-7"] = r.sup_distance < 1e-7 ? "pass" : "fail";
  j["failures"] = r.failures;
  j["passed"] = r.passed();
  return j;
}

json to_json(const development::DevelopmentReport& r) {
  json j;
  j["case"] = std::string(to_string(r.kase));
  j["n"] = r.n_values;
  j["rescaled"] = r.rescaled;
  j["deviation"] = r.deviation;
  j["remainder"] = r.remainder;
  if (r.kase == CaseTag::quadratic_cubic) {
    j["r3"] = r.r3;
    j["gamma"] = r.gamma;
  } else {
    j["mean_m"] = r.mean_m;
  }
  j["kinetic_defect"] = r.kinetic_defect;
  j["psi"] = r.psi;
  j["beta"] = r.beta;
  j["alpha"] = r.alpha_coef;
  j["remainder_scale"] = r.remainder_scale;
  j["box_limit"] = r.limit_value;
  j["box_limit_expected"] = r.limit_expected;
  j["fitted_exponent"] = r.fitted_exponent;
  j["failures"] = r.failures;
  j["passed"] = r.passed();
  return j;
}

json to_json(const range::BifurcationSolve& s) {
  json j;
  j["n"] = s.n;
  j["order"] = s.eta.order();
  j["iterations"] = s.iterations;
  j["history"] = s.history;
  j["residual"] = s.residual;
  j["tail_residual"] = s.tail_residual;
  j["eta"] = std::vector<double>(s.eta.coefficients().begin(), s.eta.coefficients().end());
  return j;
}

json to_json(const range::RangeSolveReport& r) {
  json j;
  j["delta"] = r.delta;
  j["omega"] = r.omega;
  j["n"] = r.n;
  j["L"] = r.L;
  j["J"] = r.J;
  j["min_divisor"] = {{"value", r.divisor.value}, {"l", r.divisor.l}, {"j", r.divisor.j}};
  j["iterations"] = r.iterations;
  j["residual_history"] = r.residual_history;
  j["residual"] = r.residual;
  j["converged"] = r.converged;
  j["monotone"] = r.monotone;
  if (r.delta == 0.0) j["closed_form_defect"] = r.closed_form_defect;
  j["power_v_component"] = r.power_v_component;
  j["w"] = field_summary(r.w);
  return j;
}

json to_json(const range::SweepReport& r) {
  json j;
  j["seed"] = r.seed;
  j["threshold"] = r.threshold;
  j["n"] = r.n;
  j["L"] = r.L;
  j["J"] = r.J;
  json pts = json::array();
  for (const auto& p : r.points)
    pts.push_back({{"delta0", p.delta0}, {"samples", p.samples}, {"good", p.good},
                   {"fraction", p.fraction}});
  j["points"] = pts;
  j["increasing"] = r.increasing;
  return j;
}

std::string grid_csv(const field2d::FourierSeries2D& u, int nt, int nx) {
  if (nt < 1 || nx < 2) throw DomainError("grid_csv: need nt >= 1 and nx >= 2");
  const auto vals = field2d::sample(u, nt, nx);
  std::string out = "t,x,u\n";
  char buf[96];
  for (int a = 0; a < nt; ++a) {
    const double t = 2.0 * pi * a / nt;
    for (int b = 0; b < nx; ++b) {
      const double x = pi * b / (nx - 1);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", t, x, vals(a, b));
      out += buf;
    }
  }
  return out;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_hash(const json& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(config.dump())));
  return buf;
}

json stamp(const json& body, const json& config, std::uint64_t seed) {
  json j;
  j["meta"] = {{"tool", "frwave"}, {"version", FRWAVE_VERSION},
               {"config_hash", config_hash(config)}, {"seed", seed}};
  j["config"] = config;
  j["result"] = body;
  return j;
}

std::vector<double> cosine_modes(const std::vector<double>& x, const std::vector<double>& y,
                                 int modes) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("cosine_modes: need >= 2 samples");
  if (modes < 1) throw DomainError("cosine_modes: modes must be positive");
  for (size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1])) throw DomainError("cosine_modes: abscissae must increase");
  if (x.front() < 0.0 || x.back() > pi) throw DomainError("cosine_modes: samples must lie in [0, pi]");

  // Constant extension past the first and last sample.
  auto interp = [&](double s) {
    if (s <= x.front()) return y.front();
    if (s >= x.back()) return y.back();
    const auto it = std::upper_bound(x.begin(), x.end(), s);
    const size_t i = static_cast<size_t>(it - x.begin());
    const double w = (s - x[i - 1]) / (x[i] - x[i - 1]);
    return (1.0 - w) * y[i - 1] + w * y[i];
  };
  const int M = 8192;
  std::vector<double> a(static_cast<size_t>(modes), 0.0);
  for (int q = 0; q < M; ++q) {
    const double s = pi * (q + 0.5) / M;
    const double f = interp(s);
    for (int c = 0; c < modes; ++c) a[static_cast<size_t>(c)] += f * std::cos(c * s);
  }
  a[0] /= M;
  for (int c = 1; c < modes; ++c) a[static_cast<size_t>(c)] *= 2.0 / M;
  return a;
}

}  // namespace frwave::io
