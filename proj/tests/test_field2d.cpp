#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "frwave/error.hpp"
#include "frwave/field2d.hpp"

using namespace frwave;
using namespace frwave::field2d;

namespace {

constexpr double pi = std::numbers::pi;

FourierSeries2D random_field(std::mt19937_64& rng, int L, int J) {
  std::normal_distribution<double> nd;
  FourierSeries2D u(L, J);
  for (int l = 0; l <= L; ++l)
    for (int j = 1; j <= J; ++j) u(l, j) = nd(rng) / (1.0 + l * l + j * j);
  return u;
}

FourierSeries1D random_eta(std::mt19937_64& rng, int order) {
  std::normal_distribution<double> nd;
  FourierSeries1D e(order);
  for (int k = 1; k <= order; ++k) e[k] = nd(rng) / k;
  return e;
}

double quad(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 12, 1e-14);
}

}  // namespace

TEST_CASE("from_eta is eta(t + x) - eta(t - x)") {
  std::mt19937_64 rng(1);
  const auto eta = random_eta(rng, 5);
  for (int n : {1, 3}) {
    const auto v = FourierSeries2D::from_eta(eta, n);
    for (double t : {0.2, 1.9})
      for (double x : {0.4, 2.5})
        CHECK(std::abs(v.value(t, x) - (eta(n * (t + x)) - eta(n * (t - x)))) < 1e-13);
    CHECK(sup_distance(v.eta_of_diagonal(n), eta) < 1e-15);
  }
}

TEST_CASE("property: H_n output lives on multiples of n") {
  std::mt19937_64 rng(2);
  for (int n : {2, 3, 5}) {
    const auto v = FourierSeries2D::from_eta(random_eta(rng, 4), n);
    for (int l = 0; l <= v.L(); ++l)
      for (int j = 1; j <= v.J(); ++j)
        if (l % n != 0 || j % n != 0) CHECK(v(l, j) == 0.0);
  }
}

TEST_CASE("norms: Parseval against quadrature, and the H1 identity for V") {
  std::mt19937_64 rng(3);
  const auto u = random_field(rng, 3, 3);
  const double q = quad([&](double t) { return quad([&](double x) { return u.value(t, x) * u.value(t, x); }, 0, pi); },
                        0, 2 * pi);
  CHECK(u.l2_squared() == doctest::Approx(q).epsilon(1e-11));
  const auto eta = random_eta(rng, 6);
  const auto v = FourierSeries2D::from_eta(eta, 1);
  CHECK(v.h1_squared() == doctest::Approx(4 * pi * eta.kinetic()).epsilon(1e-13));
  const auto v2 = FourierSeries2D::from_eta(eta, 2);
  CHECK(v2.h1_squared() == doctest::Approx(4.0 * v.h1_squared()).epsilon(1e-13));
}

TEST_CASE("property: projector algebra") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto u = random_field(rng, 7, 9);
    const auto pv = project_V(u), pw = project_W(u);
    CHECK((pv + pw - u).max_abs() == 0.0);
    CHECK(project_V(pw).max_abs() == 0.0);
    CHECK(project_W(pv).max_abs() == 0.0);
    CHECK((project_V(pv) - pv).max_abs() == 0.0);
    CHECK(std::abs(pv.inner(pw)) < 1e-15);
  }
}

TEST_CASE("property: even powers of V_n fields lie in W") {
  std::mt19937_64 rng(5);
  for (int n : {1, 2, 3}) {
    for (int trial = 0; trial < 4; ++trial) {
      const auto v = FourierSeries2D::from_eta(random_eta(rng, 5), n);
      for (int p : {2, 4}) {
        const auto s = power_even(v, p).sine_projection(48, 48);
        CAPTURE(n);
        CAPTURE(p);
        CHECK(project_V(s).max_abs() < 1e-12 * std::max(1.0, s.max_abs()));
      }
    }
  }
}

TEST_CASE("property: box round trip on W") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const auto w = project_W(random_field(rng, 12, 12));
    CHECK((box_apply(box_inverse(w)) - w).max_abs() < 1e-15);
    CHECK((box_inverse(box_apply(w)) - w).max_abs() < 1e-15);
  }
  FourierSeries2D bad(3, 3);
  bad(2, 2) = 1e-10;
  CHECK_THROWS_AS(box_inverse(bad), DomainError);
}

TEST_CASE("box multiplier is j^2 - l^2") {
  FourierSeries2D u(4, 4);
  u(3, 1) = 1.0;
  CHECK(box_apply(u)(3, 1) == doctest::Approx(1.0 - 9.0));
}

TEST_CASE("products agree with pointwise evaluation") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ut(0, 2 * pi), ux(0, pi);
  const auto a = random_field(rng, 4, 5);
  const auto b = random_field(rng, 3, 6);
  const auto ab = multiply(a, b);
  const auto a4 = power_even(a, 4);
  const auto a3 = power_odd(a, 3);
  for (int i = 0; i < 20; ++i) {
    const double t = ut(rng), x = ux(rng);
    const double av = a.value(t, x);
    CHECK(std::abs(ab.value(t, x) - av * b.value(t, x)) < 1e-13);
    CHECK(std::abs(a4.value(t, x) - std::pow(av, 4)) < 1e-13);
    CHECK(std::abs(a3.value(t, x) - av * av * av) < 1e-13);
  }
}

TEST_CASE("sine projection of cos-cos terms against quadrature") {
  CosCosPolynomial f;
  f.stride = 1;
  f.d = Eigen::MatrixXd::Zero(3, 5);
  f.d(0, 0) = 0.7;
  f.d(1, 3) = -1.2;
  f.d(2, 4) = 0.5;
  const auto s = f.sine_projection(2, 12);
  for (int l = 0; l <= 2; ++l)
    for (int j = 1; j <= 12; ++j) {
      double xpart = 0.0;
      for (int k = 0; k < 5; ++k)
        if (f.d(l, k) != 0.0)
          xpart += f.d(l, k) * 2 / pi * quad([&](double x) { return std::cos(k * x) * std::sin(j * x); }, 0, pi);
      CAPTURE(l);
      CAPTURE(j);
      CHECK(std::abs(s(l, j) - xpart) < 1e-13);
    }
}

TEST_CASE("integrals of cos-cos polynomials") {
  std::mt19937_64 rng(8);
  const auto a = random_field(rng, 3, 3);
  const auto f = multiply(a, a);
  CHECK(f.integral() == doctest::Approx(a.l2_squared()).epsilon(1e-13));
  const std::vector<double> w{0.5, 0.2, -0.1};
  const double q = quad([&](double t) {
    return quad([&](double x) { return (0.5 + 0.2 * std::cos(x) - 0.1 * std::cos(2 * x)) * f.value(t, x); }, 0, pi);
  }, 0, 2 * pi);
  CHECK(f.integral_weighted(w) == doctest::Approx(q).epsilon(1e-11));
}

TEST_CASE("exact box inverse: each t-mode solves its boundary value problem") {
  std::mt19937_64 rng(9);
  const auto v = FourierSeries2D::from_eta(random_eta(rng, 3), 2);
  const auto f = power_even(v, 4);
  const ExactBoxInverse inv(f);
  for (int i = 0; i < inv.modes(); ++i) {
    const int l = inv.frequency(i);
    const int row = l / f.stride;
    auto fl = [&](double x) {
      double s = 0.0;
      for (int k = 0; k < f.d.cols(); ++k) s += f.d(row, k) * std::cos(f.stride * k * x);
      return s;
    };
    CAPTURE(l);
    CHECK(std::abs(inv.mode_value(l, 0.0)) < 1e-12);
    CHECK(std::abs(inv.mode_value(l, pi)) < 1e-12);
    if (l == 0) {
      for (double x : {0.3, 1.4, 2.8})
        CHECK(std::abs(-inv.mode_second_derivative(0, x) - fl(x)) < 1e-11);
      continue;
    }
    // w'' + l^2 w + f_l must be a multiple of sin(l x)
    auto r = [&](double x) { return inv.mode_second_derivative(l, x) + l * l * inv.mode_value(l, x) + fl(x); };
    const double x0 = 0.37 / l;
    const double sigma = r(x0) / std::sin(l * x0);
    for (double x : {0.9, 1.7, 2.6}) CHECK(std::abs(r(x) - sigma * std::sin(l * x)) < 1e-10);
    CHECK(std::abs(quad([&](double x) { return inv.mode_value(l, x) * std::sin(l * x); }, 0, pi)) < 1e-12);
  }
}

TEST_CASE("exact box inverse agrees with the truncated sine-series inverse") {
  std::mt19937_64 rng(10);
  const auto v = FourierSeries2D::from_eta(random_eta(rng, 2), 1);
  const auto f = power_even(v, 4);
  const double exact = ExactBoxInverse(f).pair(f);
  double prev = 0.0;
  for (int J : {128, 512}) {
    const auto s = project_W(f.sine_projection(8, J));
    const double trunc = box_inverse(s).inner(s);
    CAPTURE(J);
    CHECK(std::abs(trunc - exact) < 1e-6 * std::abs(exact));
    prev = trunc;
  }
  CHECK(std::abs(prev - exact) < 1e-8 * std::abs(exact));
  // pointwise against the truncated field
  const auto s = project_W(f.sine_projection(8, 512));
  const auto w = box_inverse(s);
  CHECK(std::abs(ExactBoxInverse(f).value(0.7, 1.1) - w.value(0.7, 1.1)) < 1e-6);
}

TEST_CASE("dilation") {
  std::mt19937_64 rng(11);
  const auto u = random_field(rng, 2, 3);
  const auto d = u.dilated(3);
  CHECK(std::abs(d.value(0.4, 0.9) - u.value(1.2, 2.7)) < 1e-14);
}
