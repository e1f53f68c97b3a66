#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "frwave/bifurcation.hpp"
#include "frwave/development.hpp"
#include "frwave/error.hpp"
#include "frwave/galerkin.hpp"

using namespace frwave;
using namespace frwave::development;

namespace {

constexpr double pi = std::numbers::pi;

FourierSeries1D eta_default() { return FourierSeries1D(std::vector<double>{1.0, 0.0, 0.3}); }

}  // namespace

TEST_CASE("rescaling constants") {
  CHECK(quartic_beta(1.0) == doctest::Approx(std::pow(3.0 / (pi * pi), 1.0 / 6.0)).epsilon(1e-15));
  const double alpha = (9 * 0.5 - pi * pi) / 12;
  CHECK(cubic_beta(1.0, 0.5) == doctest::Approx(1 / std::sqrt(2 * std::abs(alpha))).epsilon(1e-15));
  // alpha = 0 falls back to (pi / gamma)^{1/2}
  CHECK(cubic_beta(3.0 / pi, 1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(cubic_beta(0.0, 0.0), DomainError);
}

TEST_CASE("quartic development for eta = sin t") {
  DevelopmentInput in;
  const auto rep = verify_development(in, FourierSeries1D(std::vector<double>{1.0}), {4, 8, 16, 32});
  CHECK(rep.passed());
  CHECK(rep.mean_m == doctest::Approx(2.25).epsilon(1e-14));
  CHECK(rep.limit_expected == doctest::Approx(std::pow(pi, 4) / 6 * 2.25 * 2.25).epsilon(1e-14));
  CHECK(std::abs(rep.fitted_exponent - 2.0) < 0.3);
  // the remainder n^2 (Phi_n - Psi) settles to a constant
  CHECK(std::abs(rep.remainder.back() - rep.remainder[rep.remainder.size() - 2]) <
        1e-8 * std::abs(rep.remainder.back()));
}

TEST_CASE("quartic development for a two-mode eta and a4 != 1") {
  DevelopmentInput in;
  in.a4 = 2.0;
  const auto rep = verify_development(in, eta_default(), {4, 8, 16, 32});
  CHECK(rep.passed());
  for (double d : rep.kinetic_defect) CHECK(d <= 1e-13);
  CHECK(std::abs(rep.limit_value - rep.limit_expected) <= 1e-9 * rep.limit_expected);
}

TEST_CASE("cubic development, both s*, with x-dependent a3") {
  for (int s : {1, -1}) {
    DevelopmentInput in;
    in.kase = CaseTag::quadratic_cubic;
    in.a2 = 1.0;
    in.a3_cos = {0.5, 0.3, -0.2};
    in.s_star = s;
    const auto rep = verify_development(in, eta_default(), {1, 4, 8, 16, 32});
    CAPTURE(s);
    CHECK(rep.passed());
    CHECK(std::abs(rep.fitted_exponent - 2.0) < 0.3);
    // R3 sees the non-constant part of a3 only at small n
    CHECK(std::abs(rep.r3.front()) > 1e-3);
    CHECK(std::abs(rep.r3.back()) < 1e-12);
  }
}

TEST_CASE("property: cubic Psi equals the reduced action of the cubic equation") {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> nd;
  for (double a3 : {0.3, 0.6, 0.9}) {
    bifurcation::NonlinearityCoefficients c;
    c.a2 = 1.0;
    c.a3_mean = a3;
    for (const auto& r : bifurcation::reduce_coefficients(c)) {
      if (r.equation.kind != Equation::cubic_sstar) continue;
      DevelopmentInput in;
      in.kase = CaseTag::quadratic_cubic;
      in.a3_cos = {a3};
      in.s_star = r.s_star;
      FourierSeries1D eta(5);
      for (int k = 1; k <= 5; ++k) eta[k] = nd(rng) / k;
      const double a = psi(in, eta);
      const double b = galerkin::functional_and_gradient(r.equation, eta).value;
      CAPTURE(a3);
      CHECK(std::abs(a - b) < 1e-12 * std::max(1.0, std::abs(a)));
    }
  }
}

TEST_CASE("quartic Psi is stationary at the Galerkin profile") {
  const auto g = bifurcation::solve_quartic_profile(1.0);
  const auto eta = galerkin::series_from_profile(g, 32);
  DevelopmentInput in;
  for (int k : {1, 3, 5}) {
    const double h = 1e-6;
    auto ep = eta, em = eta;
    ep[k] += h;
    em[k] -= h;
    CHECK(std::abs((psi(in, ep) - psi(in, em)) / (2 * h)) < 1e-7);
  }
}

TEST_CASE("development input validation") {
  DevelopmentInput in;
  CHECK_THROWS_AS(verify_development(in, eta_default(), {4, 8}), DomainError);
  CHECK_THROWS_AS(verify_development(in, eta_default(), {0, 4, 8}), DomainError);
  CHECK_THROWS_AS(verify_development(in, FourierSeries1D(), {4, 8, 16}), DomainError);
}
