#include "frwave/frwave.h"

#include <cmath>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "frwave/bifurcation.hpp"
#include "frwave/development.hpp"
#include "frwave/error.hpp"
#include "frwave/galerkin.hpp"
#include "frwave/linearization.hpp"
#include "frwave/range.hpp"
#include "frwave/serialize.hpp"

struct frw_profile {
  frwave::bifurcation::WaveProfile g;
};

struct frw_report {
  std::string json;
  std::string csv;
  bool passed = true;
};

namespace {

using frwave::io::json;

thread_local std::string last_error;
thread_local bool last_was_resonance = false;
thread_local int last_l = 0;
thread_local int last_j = 0;
thread_local double last_divisor = 0.0;

constexpr double residual_gate = 1e-8;

frw_status fail(frw_status s, const std::string& what) {
  last_error = what;
  last_was_resonance = false;
  return s;
}

// Runs body, translating exceptions into status codes.
template <class F>
frw_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    last_was_resonance = false;
    return FRW_OK;
  } catch (const frwave::ResonanceError& e) {
    last_error = e.what();
    last_was_resonance = true;
    last_l = e.l();
    last_j = e.j();
    last_divisor = e.divisor();
    return FRW_RESONANCE;
  } catch (const frwave::Error& e) {
    return fail(static_cast<frw_status>(static_cast<int>(e.kind())), e.what());
  } catch (const json::exception& e) {
    return fail(FRW_INVALID_ARGUMENT, std::string("config: ") + e.what());
  } catch (const std::bad_alloc&) {
    return fail(FRW_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FRW_INTERNAL, e.what());
  }
}

frw_report* make_report(const json& j, bool passed, std::string csv = {}) {
  auto* r = new frw_report;
  r->json = j.dump(2);
  r->csv = std::move(csv);
  r->passed = passed;
  return r;
}

json parse_config(const char* text) {
  if (!text) throw frwave::Error(frwave::ErrorKind::invalid_argument, "config is null");
  json c = json::parse(text);
  if (!c.is_object()) throw frwave::Error(frwave::ErrorKind::invalid_argument, "config must be an object");
  return c;
}

frwave::CaseTag case_of(const json& c) {
  const std::string s = c.value("case", std::string("quartic"));
  if (s == "quartic") return frwave::CaseTag::quartic;
  if (s == "cubic" || s == "quadratic_cubic") return frwave::CaseTag::quadratic_cubic;
  throw frwave::Error(frwave::ErrorKind::invalid_argument, "unknown case '" + s + "'");
}

std::vector<double> a3_of(const json& c) {
  if (c.contains("a3_cos")) return c.at("a3_cos").get<std::vector<double>>();
  return {c.value("a3_mean", 0.5)};
}

frwave::range::Nonlinearity nonlinearity_of(const json& c) {
  frwave::range::Nonlinearity f;
  f.kase = case_of(c);
  f.a4 = c.value("a4", 1.0);
  f.a2 = c.value("a2", 1.0);
  f.a3_cos = a3_of(c);
  if (f.a3_cos.empty()) throw frwave::DomainError("a3 expansion is empty");
  f.s_star = c.value("s_star", 1);
  return f;
}

void require_positive(const json& c, const char* key) {
  if (c.contains(key) && !(c.at(key).get<double>() > 0.0))
    throw frwave::Error(frwave::ErrorKind::invalid_argument, std::string(key) + " must be positive");
}

// Profile of the branch matching the nonlinearity's case and s*.
frwave::bifurcation::WaveProfile branch_profile(const frwave::range::Nonlinearity& f) {
  frwave::bifurcation::NonlinearityCoefficients nc;
  nc.kase = f.kase;
  nc.a2 = f.a2;
  nc.a3_mean = f.a3_cos[0];
  nc.a4 = f.a4;
  for (auto& g : frwave::bifurcation::solve_profiles(nc)) {
    if (f.kase == frwave::CaseTag::quartic) return g;
    if (g.equation().kind == frwave::Equation::cubic_sstar && g.s_star() == f.s_star) return g;
  }
  throw frwave::DomainError("no cubic profile with s* = " + std::to_string(f.s_star) +
                            " for these coefficients");
}

}  // namespace

extern "C" {

const char* frw_version(void) { return FRWAVE_VERSION; }

const char* frw_last_error(void) { return last_error.c_str(); }

int frw_last_resonance(int* l, int* j, double* divisor) {
  if (!last_was_resonance) return 0;
  if (l) *l = last_l;
  if (j) *j = last_j;
  if (divisor) *divisor = last_divisor;
  return 1;
}

frw_status frw_solve_profiles(const frw_coefficients* c, frw_profile** out, size_t capacity,
                              size_t* count) {
  if (!c || !count || (capacity > 0 && !out)) return fail(FRW_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    frwave::bifurcation::NonlinearityCoefficients nc;
    nc.kase = c->kase == FRW_CASE_QUARTIC ? frwave::CaseTag::quartic
                                          : frwave::CaseTag::quadratic_cubic;
    nc.a2 = c->a2;
    nc.a3_mean = c->a3_mean;
    nc.a4 = c->a4;
    const auto profiles = frwave::bifurcation::solve_profiles(nc);
    *count = profiles.size();
    for (size_t i = 0; i < profiles.size() && i < capacity; ++i) out[i] = new frw_profile{profiles[i]};
  });
}

frw_status frw_profile_cubic(double lambda, int s_star, frw_profile** out) {
  if (!out) return fail(FRW_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new frw_profile{frwave::bifurcation::solve_cubic_profile(lambda, s_star)}; });
}

frw_status frw_profile_parse(const char* text, frw_profile** out) {
  if (!text || !out) return fail(FRW_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new frw_profile{frwave::io::profile_from_json(json::parse(text))};
  });
}

frw_status frw_profile_get(const frw_profile* p, frw_profile_params* out) {
  if (!p || !out) return fail(FRW_INVALID_ARGUMENT, "null argument");
  *out = {p->g.V(), p->g.Omega(), p->g.m(), p->g.s_star(), p->g.lambda(), p->g.residual_sup()};
  return FRW_OK;
}

frw_status frw_profile_eval(const frw_profile* p, const double* t, double* g, size_t n) {
  if (!p || (n > 0 && (!t || !g))) return fail(FRW_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    for (size_t i = 0; i < n; ++i) g[i] = p->g(t[i]);
  });
}

frw_status frw_profile_report(const frw_profile* p, frw_report** out) {
  if (!p || !out) return fail(FRW_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    json j = frwave::io::to_json(p->g);
    const double ode = p->g.ode_residual();
    const double bridge = p->g.elliptic_bridge_residual();
    const double rel = p->g.parameter_relation_defect();
    j["checks"] = {{"ode_residual", ode},
                   {"elliptic_bridge_residual", bridge},
                   {"parameter_relation_defect", rel}};
    const bool ok = ode < residual_gate && bridge < residual_gate && rel < residual_gate;
    j["passed"] = ok;
    *out = make_report(j, ok);
  });
}

void frw_profile_free(frw_profile* p) { delete p; }

frw_status frw_certify(const frw_profile* p, frw_report** out) {
  if (!p || !out) return fail(FRW_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto c = frwave::linearization::certify(p->g);
    json j = frwave::io::to_json(c);
    j["profile"] = frwave::io::to_json(p->g);
    *out = make_report(j, c.accepted());
  });
}

frw_status frw_oracle(const frw_profile* p, int order, frw_report** out) {
  if (!p || !out) return fail(FRW_INVALID_ARGUMENT, "null argument");
  if (order < 8) return fail(FRW_INVALID_ARGUMENT, "oracle order must be >= 8");
  return guarded([&] {
    const auto r = frwave::galerkin::oracle_check(p->g, order);
    json j = frwave::io::to_json(r);
    j["profile"] = frwave::io::to_json(p->g);
    *out = make_report(j, r.passed());
  });
}

frw_status frw_develop(const char* config_json, frw_report** out) {
  if (!out) return fail(FRW_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const json c = parse_config(config_json);
    frwave::development::DevelopmentInput in;
    in.kase = case_of(c);
    in.a4 = c.value("a4", 1.0);
    in.a2 = c.value("a2", 1.0);
    in.a3_cos = a3_of(c);
    in.s_star = c.value("s_star", 1);
    const auto eta = c.value("eta", std::vector<double>{1.0, 0.0, 0.3});
    const auto n = c.value("n", std::vector<int>{4, 8, 16, 32});
    const auto rep = frwave::development::verify_development(in, frwave::FourierSeries1D(eta), n);
    *out = make_report(frwave::io::to_json(rep), rep.passed());
  });
}

frw_status frw_range(const char* config_json, frw_report** out) {
  if (!out) return fail(FRW_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const json c = parse_config(config_json);
    for (const char* k : {"tolerance", "divisor_threshold", "bifurcation_tolerance"})
      require_positive(c, k);
    const auto f = nonlinearity_of(c);
    const int n = c.value("n", 2);
    const int order = c.value("order", f.kase == frwave::CaseTag::quartic ? 16 : 32);

    frwave::range::BifurcationOptions bo;
    bo.tolerance = c.value("bifurcation_tolerance", bo.tolerance);
    const auto g = branch_profile(f);
    const auto bif = frwave::range::solve_bifurcation(
        f, frwave::galerkin::series_from_profile(g, order), n, bo);

    frwave::range::RangeConfig rc;
    rc.delta = c.value("delta", 0.0);
    rc.n = n;
    rc.L = c.value("L", rc.L);
    rc.J = c.value("J", rc.J);
    if (c.contains("omega") && !c.at("omega").is_null()) rc.omega = c.at("omega").get<double>();
    rc.divisor_threshold = c.value("divisor_threshold", rc.divisor_threshold);
    rc.tolerance = c.value("tolerance", rc.tolerance);
    rc.max_iterations = c.value("max_iterations", rc.max_iterations);
    const auto rep = frwave::range::range_solve(f, bif.v(), rc);

    json j;
    j["profile"] = frwave::io::to_json(g);
    j["bifurcation"] = frwave::io::to_json(bif);
    j["range"] = frwave::io::to_json(rep);
    bool ok = bif.residual < residual_gate && rep.converged && rep.residual < rc.tolerance;
    if (rc.delta == 0.0) ok = ok && rep.closed_form_defect < 1e-12 * (1.0 + rep.w.max_abs());
    j["passed"] = ok;
    const int nt = c.value("grid_nt", 64);
    const int nx = c.value("grid_nx", 33);
    *out = make_report(j, ok, frwave::io::grid_csv(rep.w, nt, nx));
  });
}

frw_status frw_sweep(const char* config_json, frw_report** out) {
  if (!out) return fail(FRW_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const json c = parse_config(config_json);
    require_positive(c, "threshold");
    const auto f = nonlinearity_of(c);
    const auto d0 = c.value("delta0", std::vector<double>{0.2, 0.1, 0.05, 0.025});
    const auto rep = frwave::range::delta_sweep(
        f, d0, c.value("samples", 2000), c.value("seed", std::uint64_t{1}), c.value("n", 2),
        c.value("L", 64), c.value("J", 64), c.value("threshold", 1e-3), c.value("threads", 0));
    json j = frwave::io::to_json(rep);
    j["passed"] = rep.increasing;
    *out = make_report(j, rep.increasing);
  });
}

const char* frw_report_json(const frw_report* r) { return r ? r->json.c_str() : ""; }

const char* frw_report_csv(const frw_report* r) { return r ? r->csv.c_str() : ""; }

int frw_report_passed(const frw_report* r) { return r && r->passed ? 1 : 0; }

void frw_report_free(frw_report* r) { delete r; }

frw_status frw_stamp(const char* result_json, const char* config_json, uint64_t seed,
                     frw_report** out) {
  if (!result_json || !config_json || !out) return fail(FRW_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const json body = json::parse(result_json);
    const json cfg = json::parse(config_json);
    *out = make_report(frwave::io::stamp(body, cfg, seed), body.value("passed", true));
  });
}

frw_status frw_cosine_modes(const double* x, const double* y, size_t n, double* out, int modes) {
  if (!x || !y || !out) return fail(FRW_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto a = frwave::io::cosine_modes(std::vector<double>(x, x + n),
                                            std::vector<double>(y, y + n), modes);
    for (int c = 0; c < modes; ++c) out[c] = a[static_cast<size_t>(c)];
  });
}

}  // extern "C"
