#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "frwave/bifurcation.hpp"
#include "frwave/elliptic.hpp"
#include "frwave/error.hpp"
#include "frwave/linearization.hpp"
#include "frwave/spectral.hpp"

using namespace frwave;
using namespace frwave::linearization;
using bifurcation::WaveProfile;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> random_odd(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> nd;
  std::vector<double> b(6);
  for (double& x : b) x = nd(rng);
  std::vector<double> f(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t = 2 * pi * i / n;
    for (int k = 1; k <= 6; ++k) f[static_cast<size_t>(i)] += b[static_cast<size_t>(k - 1)] * std::sin(k * t);
  }
  return f;
}

double mean_product(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s / static_cast<double>(a.size());
}

std::vector<WaveProfile> sample_profiles() {
  return {bifurcation::solve_quartic_profile(1.0), bifurcation::solve_cubic_profile(0.4, 1),
          bifurcation::solve_cubic_profile(1.0, -1)};
}

}  // namespace

TEST_CASE("Green operator inverts the Hill operator (spectral oracle)") {
  std::mt19937_64 rng(7);
  for (const auto& g : sample_profiles()) {
    const auto pair = fundamental_pair(g);
    const auto gs = g.sample(pair.n);
    for (int trial = 0; trial < 3; ++trial) {
      const auto f = random_odd(rng, pair.n);
      const auto h = green_apply(pair, f);
      const auto hdd = spectral::derivative(h, 2);
      double worst = 0.0, scale = 0.0;
      for (int i = 0; i < pair.n; ++i) {
        const double q = pair.hill.c0 + pair.hill.c2 * gs[static_cast<size_t>(i)] * gs[static_cast<size_t>(i)];
        worst = std::max(worst, std::abs(hdd[static_cast<size_t>(i)] + q * h[static_cast<size_t>(i)] -
                                         f[static_cast<size_t>(i)]));
        scale = std::max(scale, std::abs(f[static_cast<size_t>(i)]));
      }
      CAPTURE(to_string(g.equation().kind));
      CHECK(worst < 1e-7 * scale);
      // L f is odd: its mean vanishes and h(2 pi - t) = -h(t).
      CHECK(std::abs(h[static_cast<size_t>(pair.n / 4)] + h[static_cast<size_t>(3 * pair.n / 4)]) <
            1e-9 * scale);
    }
  }
}

TEST_CASE("property: L is symmetric on random odd trigonometric polynomials") {
  std::mt19937_64 rng(11);
  for (const auto& g : sample_profiles()) {
    const auto pair = fundamental_pair(g);
    for (int trial = 0; trial < 20; ++trial) {
      const auto f1 = random_odd(rng, pair.n);
      const auto f2 = random_odd(rng, pair.n);
      const double a = mean_product(f1, green_apply(pair, f2));
      const double b = mean_product(f2, green_apply(pair, f1));
      CHECK(std::abs(a - b) < 1e-8 * std::max(1.0, std::abs(a)));
    }
  }
}

TEST_CASE("fundamental pair: Wronskian, monodromy and rho forms") {
  for (const auto& g : sample_profiles()) {
    const auto pair = fundamental_pair(g);
    const double scale = std::max(1.0, std::abs(pair.rho));
    CAPTURE(to_string(g.equation().kind));
    CHECK(pair.wronskian_drift < 1e-9);
    CHECK(std::abs(pair.rho - pair.rho_closed) < 1e-8 * scale);
    CHECK(std::abs(pair.rho - pair.rho_mean_form) < 1e-8 * scale);
    CHECK(pair.closed_form_defect < 1e-7);
    // v(t + 2 pi) - v(t) = rho u(t) on the second period.
    double worst = 0.0;
    for (int i = 0; i < pair.n; ++i)
      worst = std::max(worst, std::abs(pair.v_bar[static_cast<size_t>(i + pair.n)] -
                                       pair.v_bar[static_cast<size_t>(i)] -
                                       pair.rho * pair.u_bar[static_cast<size_t>(i)]));
    CHECK(worst < 1e-8 * scale);
  }
}

TEST_CASE("rho signs") {
  CHECK(fundamental_pair(bifurcation::solve_quartic_profile(1.0)).rho > 0.0);
  for (double lam : {0.2, 0.5}) CHECK(fundamental_pair(bifurcation::solve_cubic_profile(lam, 1)).rho < 0.0);
  for (double lam : {0.7, 2.0}) CHECK(fundamental_pair(bifurcation::solve_cubic_profile(lam, -1)).rho > 0.0);
}

TEST_CASE("rho agrees with the period-energy derivative of the orbit family") {
  const auto g = bifurcation::solve_cubic_profile(0.5, -1);
  const auto pair = fundamental_pair(g);
  const double rte = rho_from_period_energy(g, pair.hill);
  CHECK(std::abs(rte - pair.rho) < 1e-2 * std::abs(pair.rho));
}

TEST_CASE("quartic certificate") {
  const auto c = certify(bifurcation::solve_quartic_profile(1.0));
  CHECK(c.accepted());
  CHECK(c.B_of_g > 0.0);
  for (const char* id : {"id1", "id2", "coefficienti_gLI1", "coefficienti_gLI2",
                         "coefficienti_g3LI1", "coefficienti_g3LI2"}) {
    CAPTURE(id);
    REQUIRE(c.identity_residuals.count(id) == 1);
    CHECK(c.identity_residuals.at(id) < 1e-7);
  }
  CHECK(c.min_singular_value > 1e-3);
}

TEST_CASE("property: sign(A0) = -s* and the three A0 routes agree") {
  for (double lam : {0.2, 0.4, 0.6})
    for (int s : {1, -1}) {
      if (s == -1 && lam < 0.5) continue;
      const auto c = certify(bifurcation::solve_cubic_profile(lam, s));
      CAPTURE(lam);
      CAPTURE(s);
      CHECK(c.accepted());
      CHECK((c.A0 > 0 ? 1 : -1) == -s);
      CHECK(std::abs(c.A0 - c.informational.at("A0_closed")) < 1e-7);
      CHECK(std::abs(c.A0 - c.informational.at("A0_intermediate")) < 1e-7);
      CHECK(std::abs(c.A0 - c.informational.at("A0_integral_route")) < 1e-7);
    }
}

TEST_CASE("A0 closed form: sign holds where the pulse regime defeats the ODE path") {
  for (double lam : {0.1, 0.2, 0.3}) {
    const auto g = bifurcation::solve_cubic_profile(lam, -1);
    CHECK(A0_closed_form(lam, g.m()).A0 > 0.0);
  }
}

TEST_CASE("Hill potential coefficients") {
  const auto g = bifurcation::solve_cubic_profile(0.5, 1);
  const auto h = hill_potential(g);
  double g2 = 0.0;
  const auto s = g.sample(4096);
  for (double v : s) g2 += v * v;
  CHECK(std::abs(h.g2 - g2 / 4096) < 1e-12);
}
