#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include "frwave/elliptic.hpp"
#include "frwave/error.hpp"

using namespace frwave;
using elliptic::complete_E;
using elliptic::complete_K;
using elliptic::jacobi;

namespace {

constexpr double pi = std::numbers::pi;

double quad_K(double m) {
  auto f = [m](double s) { return 1.0 / std::sqrt(1.0 - m * std::sin(s) * std::sin(s)); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, pi / 2, 15, 1e-15);
}

double quad_E(double m) {
  auto f = [m](double s) { return std::sqrt(1.0 - m * std::sin(s) * std::sin(s)); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, pi / 2, 15, 1e-15);
}

// am(t) from am' = sqrt(1 - m sin^2 am), am(0) = 0.
double am_by_ode(double t, double m) {
  using state = std::array<double, 1>;
  state y{0.0};
  auto rhs = [m](const state& x, state& dx, double) {
    dx[0] = std::sqrt(1.0 - m * std::sin(x[0]) * std::sin(x[0]));
  };
  boost::numeric::odeint::integrate_adaptive(
      boost::numeric::odeint::make_controlled<boost::numeric::odeint::runge_kutta_fehlberg78<state>>(
          1e-14, 1e-14),
      rhs, y, 0.0, t, 1e-3);
  return y[0];
}

}  // namespace

TEST_CASE("K and E agree with 30-digit reference values") {
  struct Row {
    double m, K, E;
  };
  const Row rows[] = {
      {-10.0, 0.7908718902387384752, 3.6391380384177681635},
      {-2.0, 1.1714200841467698589, 2.1844381427462011854},
      {-0.5, 1.4157372084259561989, 1.751771275694817862},
      {0.0, 1.5707963267948966192, 1.5707963267948966192},
      {0.3, 1.713889448178791062, 1.445363064412665262},
      {0.9, 2.5780921133481731882, 1.1047747327040733261},
      {0.999, 4.8411325605502970303, 1.0021707908344451659},
  };
  for (const auto& r : rows) {
    CAPTURE(r.m);
    CHECK(complete_K(r.m) == doctest::Approx(r.K).epsilon(2e-15));
    CHECK(complete_E(r.m) == doctest::Approx(r.E).epsilon(2e-15));
  }
}

TEST_CASE("K and E match adaptive quadrature across the parameter range") {
  for (double m = -50.0; m < 0.99; m += 0.37) {
    CAPTURE(m);
    CHECK(std::abs(complete_K(m) - quad_K(m)) < 1e-13);
    CHECK(std::abs(complete_E(m) - quad_E(m)) < 1e-13);
  }
}

TEST_CASE("reciprocal-modulus transforms") {
  for (double m : {-10.0, -2.0, -0.5}) {
    const double mu = m / (m - 1.0);
    CAPTURE(m);
    CHECK(std::abs(complete_K(m) - complete_K(mu) / std::sqrt(1.0 - m)) < 1e-12);
    CHECK(std::abs(complete_E(m) - std::sqrt(1.0 - m) * complete_E(mu)) < 1e-12);
  }
}

TEST_CASE("Jacobi functions against reference values") {
  struct Row {
    double t, m, sn, cn, dn;
  };
  const Row rows[] = {
      {0.7, 0.3, 0.63230477631086454908, 0.77471973632692974382, 0.93811363968143020691},
      {2.5, -2.0, -0.1577882875845424662, -0.98747296484569020418, 1.0245946942072872926},
      {1.3, 0.9, 0.87462620904282036508, 0.48479789031655726857, 0.55814522752581717534},
      {5.0, -0.5, -0.63293595711876071581, 0.77420415536611420099, 1.0955838456763228726},
      {0.4, -40.0, 0.79805602498582463264, 0.60258325647484169842, 5.1454578766759917975},
  };
  for (const auto& r : rows) {
    CAPTURE(r.t);
    CAPTURE(r.m);
    const auto s = jacobi(r.t, r.m);
    CHECK(std::abs(s.sn - r.sn) < 1e-13);
    CHECK(std::abs(s.cn - r.cn) < 1e-13);
    CHECK(std::abs(s.dn - r.dn) < 1e-13 * std::max(1.0, r.dn));
  }
}

TEST_CASE("amplitude matches direct integration of its ODE") {
  for (double m : {-5.0, -0.3, 0.2, 0.8}) {
    for (double t : {0.3, 1.7, 4.0}) {
      CAPTURE(m);
      CAPTURE(t);
      CHECK(std::abs(jacobi(t, m).am - am_by_ode(t, m)) < 1e-11);
    }
  }
}

TEST_CASE("property: Pythagorean and derivative identities on 256-point grids") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> pick(-30.0, 0.999);
  for (int trial = 0; trial < 40; ++trial) {
    const double m = pick(rng);
    const double period = 4.0 * complete_K(m);
    double worst_dn = 0.0, worst_der = 0.0;
    for (int i = 0; i < 256; ++i) {
      const auto s = jacobi(period * i / 256.0, m);
      worst_dn = std::max(worst_dn, std::abs(s.dn * s.dn + m * s.sn * s.sn - 1.0));
      const double d = elliptic::sn_derivative(s);
      worst_der = std::max(worst_der,
                           std::abs(d * d - (1.0 - s.sn * s.sn) * (1.0 - m * s.sn * s.sn)));
    }
    CAPTURE(m);
    CHECK(worst_dn < 1e-10);
    CHECK(worst_der < 1e-10 * std::max(1.0, std::abs(m)));
  }
}

TEST_CASE("property: sn is odd and 4K-periodic") {
  for (double m : {-3.0, 0.5}) {
    const double p = 4.0 * complete_K(m);
    for (double t : {0.2, 1.1, 2.9}) {
      CHECK(std::abs(jacobi(-t, m).sn + jacobi(t, m).sn) < 1e-14);
      CHECK(std::abs(jacobi(t + p, m).sn - jacobi(t, m).sn) < 1e-12);
    }
  }
}

TEST_CASE("mean of sn^2 along both evaluation paths and by quadrature") {
  for (double m : {-20.0, -1.0, -0.2, 0.4, 0.95}) {
    const auto phi = elliptic::phi_mean_map(m);
    const double quad = elliptic::period_average(m, [](const elliptic::JacobiSample& s) {
      return s.sn * s.sn;
    });
    CAPTURE(m);
    CHECK(std::abs(phi.direct - phi.reciprocal) < 1e-13);
    CHECK(std::abs(phi.direct - quad) < 1e-12);
  }
  CHECK(elliptic::mean_sn2(0.0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("phi derivative against a central difference") {
  for (double m : {-4.0, -0.5, 0.3}) {
    const double h = 1e-5;
    const double fd = (elliptic::mean_sn2(m + h) - elliptic::mean_sn2(m - h)) / (2 * h);
    CHECK(std::abs(elliptic::phi_derivative(m) - fd) < 1e-8);
  }
}

TEST_CASE("quartic modulus function changes sign once on (-1, 0)") {
  int changes = 0;
  double prev = elliptic::psi_quartic(-0.999);
  for (int i = 1; i <= 999; ++i) {
    const double v = elliptic::psi_quartic(-0.999 + 0.999 * i / 999.0);
    if ((v > 0) != (prev > 0)) ++changes;
    prev = v;
  }
  CHECK(changes == 1);
  CHECK(std::abs(elliptic::psi_quartic(-0.25544422736786543534)) < 1e-14);
}

TEST_CASE("parameter at or above one is rejected") {
  CHECK_THROWS_AS(elliptic::Modulus(1.0), DomainError);
  CHECK_THROWS_AS(complete_K(1.5), DomainError);
  CHECK_THROWS_AS(complete_K(std::nan("")), DomainError);
}
