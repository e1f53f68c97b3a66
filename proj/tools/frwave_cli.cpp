// frwave command-line front end.  Talks to the library only through the C API.
//
// Exit codes: 0 pass, 1 a gate failed, 2 domain error, 3 no convergence,
// 4 resonance (small divisor), 5 bad arguments, 6 internal error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "frwave/frwave.h"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct Coefficients {
  std::string kase = "quartic";
  double a2 = 1.0;
  double a3_mean = 0.5;
  double a4 = 1.0;
  std::string a3_file;
  int s_star = 1;
};

struct Options {
  std::string out_dir = "frwave-out";
  std::uint64_t seed = 1;
};

// Thrown out of a subcommand to end the run with a given exit code.
struct Exit {
  int code;
};

int report_error(frw_status s) {
  std::cerr << "frwave: " << frw_last_error() << "\n";
  int l = 0, j = 0;
  double d = 0.0;
  if (s == FRW_RESONANCE && frw_last_resonance(&l, &j, &d))
    std::cerr << "frwave: resonant mode (l, j) = (" << l << ", " << j << "), divisor " << d << "\n";
  return static_cast<int>(s);
}

void check(frw_status s) {
  if (s != FRW_OK) throw Exit{report_error(s)};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "frwave: cannot read " << path << "\n";
    throw Exit{FRW_INVALID_ARGUMENT};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path output_dir(const Options& o) {
  // The environment variable may relocate outputs; nothing else is read from it.
  const char* env = std::getenv("FRWAVE_OUT_DIR");
  fs::path dir = env && *env ? fs::path(env) : fs::path(o.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    std::cerr << "frwave: cannot create " << dir << ": " << ec.message() << "\n";
    throw Exit{FRW_INVALID_ARGUMENT};
  }
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "frwave: cannot write " << path << "\n";
    throw Exit{FRW_INTERNAL};
  }
  std::cout << path.string() << "\n";
}

// Stamps a result with version, config hash and seed, writes it, and returns
// the exit code implied by its verdict.
int emit(const Options& o, const std::string& name, const json& result, const json& config,
         const std::string& csv = {}) {
  frw_report* r = nullptr;
  check(frw_stamp(result.dump().c_str(), config.dump().c_str(), o.seed, &r));
  const fs::path dir = output_dir(o);
  write_text(dir / (name + ".json"), std::string(frw_report_json(r)) + "\n");
  if (!csv.empty()) write_text(dir / (name + "_w.csv"), csv);
  const bool ok = result.value("passed", true);
  frw_report_free(r);
  return ok ? 0 : FRW_GATE_FAILED;
}

json take(frw_report* r) {
  json j = json::parse(frw_report_json(r));
  frw_report_free(r);
  return j;
}

std::vector<double> a3_modes(const Coefficients& c) {
  if (c.a3_file.empty()) return {c.a3_mean};
  std::istringstream in(read_file(c.a3_file));
  std::vector<double> x, y;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    for (char& ch : line)
      if (ch == ',' || ch == ';') ch = ' ';
    std::istringstream ls(line);
    double a, b;
    if (ls >> a >> b) {
      x.push_back(a);
      y.push_back(b);
    }
  }
  std::vector<double> out(32);
  check(frw_cosine_modes(x.data(), y.data(), x.size(), out.data(), 32));
  return out;
}

json coefficients_json(const Coefficients& c) {
  json j;
  j["case"] = c.kase;
  if (c.kase == "quartic") {
    j["a4"] = c.a4;
  } else {
    j["a2"] = c.a2;
    j["a3_cos"] = a3_modes(c);
    j["s_star"] = c.s_star;
  }
  return j;
}

void add_coefficients(CLI::App* sub, Coefficients& c, bool with_s_star) {
  sub->add_option("--case", c.kase, "quartic or cubic")
      ->check(CLI::IsMember({"quartic", "cubic"}))
      ->capture_default_str();
  sub->add_option("--a2", c.a2, "quadratic coefficient")->capture_default_str();
  sub->add_option("--a3-mean", c.a3_mean, "mean of a3(x)")->capture_default_str();
  sub->add_option("--a3-file", c.a3_file, "two-column samples of a3(x) on [0, pi]")
      ->check(CLI::ExistingFile);
  sub->add_option("--a4", c.a4, "quartic coefficient")->capture_default_str();
  if (with_s_star)
    sub->add_option("--s-star", c.s_star, "branch sign")
        ->check(CLI::IsMember({-1, 1}))
        ->capture_default_str();
}

// Reads profile number `index` from a file written by the profile command
// (or a bare profile object).
json load_profile(const std::string& path, int index) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::exception& e) {
    std::cerr << "frwave: " << path << ": " << e.what() << "\n";
    throw Exit{FRW_INVALID_ARGUMENT};
  }
  const json* p = &doc;
  if (doc.contains("result")) p = &doc["result"];
  if (p->contains("profiles")) {
    const json& list = (*p)["profiles"];
    if (index < 0 || index >= static_cast<int>(list.size())) {
      std::cerr << "frwave: profile index " << index << " out of range\n";
      throw Exit{FRW_INVALID_ARGUMENT};
    }
    return list[static_cast<size_t>(index)];
  }
  return *p;
}

frw_profile* parse_profile(const json& p) {
  frw_profile* h = nullptr;
  check(frw_profile_parse(p.dump().c_str(), &h));
  return h;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Standing-wave bifurcation profiles, certificates and reduced-action checks"};
  app.set_config("--config", "", "TOML/INI file with option values");
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  app.set_version_flag("--version", std::string(frw_version()));
  Options opt;
  app.add_option("-o,--out", opt.out_dir, "output directory (FRWAVE_OUT_DIR overrides)")
      ->capture_default_str();
  app.add_option("--seed", opt.seed, "RNG seed, recorded in every output")->capture_default_str();

  // profile
  Coefficients pc;
  double p_lambda = -1.0;
  auto* profile = app.add_subcommand("profile", "solve the 0th-order profiles");
  add_coefficients(profile, pc, true);
  auto* lambda_opt =
      profile->add_option("--lambda", p_lambda, "solve the cubic profile for this lambda directly");

  // certify / oracle
  std::string cert_file;
  int cert_index = -1;
  auto* certify = app.add_subcommand("certify", "non-degeneracy certificates of a profile file");
  certify->add_option("profile", cert_file, "profile.json")->required()->check(CLI::ExistingFile);
  certify->add_option("--index", cert_index, "certify only this entry (default: all)");

  std::string orc_file;
  int orc_index = -1;
  int orc_order = 64;
  auto* oracle = app.add_subcommand("oracle", "Galerkin cross-check of a profile file");
  oracle->add_option("profile", orc_file, "profile.json")->required()->check(CLI::ExistingFile);
  oracle->add_option("--index", orc_index, "check only this entry (default: all)");
  oracle->add_option("--order", orc_order, "Galerkin truncation N")->capture_default_str();

  // develop
  Coefficients dc;
  std::vector<double> d_eta{1.0, 0.0, 0.3};
  std::vector<int> d_n{4, 8, 16, 32};
  auto* develop = app.add_subcommand("develop", "large-n development of the reduced action");
  add_coefficients(develop, dc, true);
  develop->add_option("--eta", d_eta, "sine coefficients b_1 b_2 ... of eta")->capture_default_str();
  develop->add_option("--n", d_n, "dilation factors (at least three)")->capture_default_str();

  // range
  Coefficients rc;
  int r_n = 2, r_order = 0, r_L = 64, r_J = 64, r_iter = 200, r_nt = 64, r_nx = 33;
  double r_delta = 0.0, r_tol = 1e-9, r_thr = 1e-6;
  double r_omega = 0.0;
  auto* range = app.add_subcommand("range", "bifurcation equation on V_n and range solve on W");
  add_coefficients(range, rc, true);
  range->add_option("--n", r_n, "dilation factor")->capture_default_str()->check(CLI::PositiveNumber);
  range->add_option("--order", r_order, "modes of the V_n solve (default 16 quartic, 32 cubic)");
  range->add_option("--delta", r_delta, "amplitude parameter")->capture_default_str();
  range->add_option("--L", r_L, "time modes")->capture_default_str()->check(CLI::PositiveNumber);
  range->add_option("--J", r_J, "space modes")->capture_default_str()->check(CLI::PositiveNumber);
  auto* omega_opt = range->add_option("--omega", r_omega, "override the frequency");
  range->add_option("--tolerance", r_tol, "range residual gate")->capture_default_str()
      ->check(CLI::PositiveNumber);
  range->add_option("--divisor-threshold", r_thr, "reject divisors below this")
      ->capture_default_str()->check(CLI::PositiveNumber);
  range->add_option("--max-iterations", r_iter)->capture_default_str();
  range->add_option("--grid-nt", r_nt, "CSV grid points in t")->capture_default_str();
  range->add_option("--grid-nx", r_nx, "CSV grid points in x")->capture_default_str();

  // sweep
  Coefficients sc;
  std::vector<double> s_d0{0.2, 0.1, 0.05, 0.025};
  int s_samples = 2000, s_n = 2, s_L = 64, s_J = 64, s_threads = 0;
  double s_thr = 1e-3;
  auto* sweep = app.add_subcommand("sweep", "fraction of non-resonant delta in [0, delta0]");
  add_coefficients(sweep, sc, true);
  sweep->add_option("--delta0", s_d0, "interval ends")->capture_default_str();
  sweep->add_option("--samples", s_samples)->capture_default_str()->check(CLI::PositiveNumber);
  sweep->add_option("--n", s_n)->capture_default_str()->check(CLI::PositiveNumber);
  sweep->add_option("--L", s_L)->capture_default_str()->check(CLI::PositiveNumber);
  sweep->add_option("--J", s_J)->capture_default_str()->check(CLI::PositiveNumber);
  sweep->add_option("--threshold", s_thr)->capture_default_str()->check(CLI::PositiveNumber);
  sweep->add_option("--threads", s_threads, "worker threads (0: hardware)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : FRW_INVALID_ARGUMENT;
  }

  try {
    if (*profile) {
      json config = coefficients_json(pc);
      config["command"] = "profile";
      std::vector<frw_profile*> handles;
      if (*lambda_opt) {
        config["lambda"] = p_lambda;
        config["s_star"] = pc.s_star;
        frw_profile* h = nullptr;
        check(frw_profile_cubic(p_lambda, pc.s_star, &h));
        handles.push_back(h);
      } else {
        frw_coefficients c{};
        c.kase = pc.kase == "quartic" ? FRW_CASE_QUARTIC : FRW_CASE_CUBIC;
        c.a2 = pc.a2;
        c.a3_mean = pc.kase == "quartic" ? 0.0 : config["a3_cos"][0].get<double>();
        c.a4 = pc.a4;
        size_t count = 0;
        check(frw_solve_profiles(&c, nullptr, 0, &count));
        handles.resize(count);
        check(frw_solve_profiles(&c, handles.data(), count, &count));
      }
      json result;
      result["profiles"] = json::array();
      bool ok = true;
      for (frw_profile* h : handles) {
        frw_report* r = nullptr;
        const frw_status s = frw_profile_report(h, &r);
        frw_profile_free(h);
        check(s);
        ok = ok && frw_report_passed(r);
        result["profiles"].push_back(take(r));
      }
      result["passed"] = ok;
      return emit(opt, "profile", result, config);
    }

    if (*certify || *oracle) {
      const bool cert = static_cast<bool>(*certify);
      const std::string& file = cert ? cert_file : orc_file;
      const int index = cert ? cert_index : orc_index;
      json doc = json::parse(read_file(file));
      const size_t total = doc.contains("result") && doc["result"].contains("profiles")
                               ? doc["result"]["profiles"].size()
                               : 1;
      json config;
      config["command"] = cert ? "certify" : "oracle";
      if (!cert) config["order"] = orc_order;
      config["index"] = index;
      json result;
      json& list = result[cert ? "certificates" : "oracles"] = json::array();
      bool ok = true;
      for (size_t i = 0; i < total; ++i) {
        if (index >= 0 && static_cast<size_t>(index) != i) continue;
        const json p = load_profile(file, static_cast<int>(i));
        config["profiles"].push_back(p);
        frw_profile* h = parse_profile(p);
        frw_report* r = nullptr;
        const frw_status s = cert ? frw_certify(h, &r) : frw_oracle(h, orc_order, &r);
        frw_profile_free(h);
        check(s);
        ok = ok && frw_report_passed(r);
        list.push_back(take(r));
      }
      if (index >= static_cast<int>(total)) {
        std::cerr << "frwave: profile index " << index << " out of range\n";
        return FRW_INVALID_ARGUMENT;
      }
      result["passed"] = ok;
      return emit(opt, cert ? "certificate" : "oracle", result, config);
    }

    if (*develop) {
      json config = coefficients_json(dc);
      config["command"] = "develop";
      config["eta"] = d_eta;
      config["n"] = d_n;
      frw_report* r = nullptr;
      check(frw_develop(config.dump().c_str(), &r));
      return emit(opt, "development", take(r), config);
    }

    if (*range) {
      json config = coefficients_json(rc);
      config["command"] = "range";
      config["n"] = r_n;
      if (r_order > 0) config["order"] = r_order;
      config["delta"] = r_delta;
      config["L"] = r_L;
      config["J"] = r_J;
      if (*omega_opt) config["omega"] = r_omega;
      config["tolerance"] = r_tol;
      config["divisor_threshold"] = r_thr;
      config["max_iterations"] = r_iter;
      config["grid_nt"] = r_nt;
      config["grid_nx"] = r_nx;
      frw_report* r = nullptr;
      check(frw_range(config.dump().c_str(), &r));
      const std::string csv = frw_report_csv(r);
      return emit(opt, "range", take(r), config, csv);
    }

    if (*sweep) {
      json config = coefficients_json(sc);
      config["command"] = "sweep";
      config["delta0"] = s_d0;
      config["samples"] = s_samples;
      config["seed"] = opt.seed;
      config["n"] = s_n;
      config["L"] = s_L;
      config["J"] = s_J;
      config["threshold"] = s_thr;
      // Thread count does not change results, so it stays out of the hashed config.
      json call = config;
      call["threads"] = s_threads;
      frw_report* r = nullptr;
      check(frw_sweep(call.dump().c_str(), &r));
      return emit(opt, "sweep", take(r), config);
    }
  } catch (const Exit& e) {
    return e.code;
  } catch (const json::exception& e) {
    std::cerr << "frwave: " << e.what() << "\n";
    return FRW_INVALID_ARGUMENT;
  }
  return FRW_INTERNAL;
}
