#include "frwave/development.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "frwave/error.hpp"
#include "frwave/field2d.hpp"
#include "frwave/galerkin.hpp"

namespace frwave::development {

namespace {

constexpr double pi = std::numbers::pi;

struct CubicConstants {
  double alpha;
  double gamma;
  double beta;
};

CubicConstants cubic_constants(const DevelopmentInput& in) {
  if (in.a3_cos.empty()) throw DomainError("development: a3 expansion is empty");
  const double a3 = in.a3_cos[0];
  CubicConstants c{};
  c.alpha = (9.0 * a3 - pi * pi * in.a2 * in.a2) / 12.0;
  c.gamma = pi * a3 / 2.0;
  if (c.alpha != 0.0) {
    c.beta = 1.0 / std::sqrt(2.0 * std::abs(c.alpha));
  } else if (c.gamma > 0.0) {
    c.beta = std::sqrt(pi / c.gamma);
  } else {
    throw DomainError("development: (a2, <a3>) must differ from (0, 0)");
  }
  return c;
}

double mean_fourth(const FourierSeries1D& eta) {
  const auto s = eta.sample(field2d::product_grid(4 * eta.order()));
  double acc = 0.0;
  for (double x : s) acc += x * x * x * x;
  return acc / static_cast<double>(s.size());
}

// int_Omega |grad H_n v|^2 by trapezoid quadrature on the torus; exact for
// trigonometric polynomials once the grid resolves twice the top mode.
double kinetic_by_quadrature(const field2d::FourierSeries2D& u) {
  struct Term {
    int l, j;
    double c;
  };
  std::vector<Term> terms;
  for (int l = 0; l <= u.L(); ++l)
    for (int j = 1; j <= u.J(); ++j)
      if (u(l, j) != 0.0) terms.push_back({l, j, u(l, j)});
  const int M = field2d::product_grid(std::max(u.L(), u.J()));
  const auto T = static_cast<Eigen::Index>(terms.size());
  Eigen::MatrixXd at(M, T), bx(M, T), ax(M, T), cx(M, T);
  for (int a = 0; a < M; ++a) {
    for (Eigen::Index k = 0; k < T; ++k) {
      const Term& tm = terms[static_cast<size_t>(k)];
      const double lt = 2.0 * pi * static_cast<double>((static_cast<long>(tm.l) * a) % M) / M;
      const double jx = 2.0 * pi * static_cast<double>((static_cast<long>(tm.j) * a) % M) / M;
      at(a, k) = -tm.l * tm.c * std::sin(lt);
      ax(a, k) = tm.j * tm.c * std::cos(lt);
      bx(a, k) = std::sin(jx);
      cx(a, k) = std::cos(jx);
    }
  }
  const Eigen::MatrixXd ut = at * bx.transpose();
  const Eigen::MatrixXd ux = ax * cx.transpose();
  const double acc = ut.squaredNorm() + ux.squaredNorm();
  // The torus integral counts the strip twice.
  return 0.5 * acc * (2.0 * pi / M) * (2.0 * pi / M);
}

double fitted_exponent(const std::vector<int>& n, const std::vector<double>& d) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double k = static_cast<double>(n.size());
  for (size_t i = 0; i < n.size(); ++i) {
    const double x = std::log(static_cast<double>(n[i]));
    const double y = std::log(std::abs(d[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return -(k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace

double cubic_beta(double a2, double a3_mean) {
  DevelopmentInput in;
  in.kase = CaseTag::quadratic_cubic;
  in.a2 = a2;
  in.a3_cos = {a3_mean};
  return cubic_constants(in).beta;
}

double quartic_beta(double a4) {
  if (a4 == 0.0) throw DomainError("quartic_beta: a4 must be nonzero");
  return std::pow(3.0 / (pi * pi * a4 * a4), 1.0 / 6.0);
}

double psi(const DevelopmentInput& in, const FourierSeries1D& eta) {
  if (in.kase == CaseTag::quartic) {
    const double a = galerkin::quartic_A(eta);
    return 0.5 * eta.kinetic() - (2.0 * pi / 8.0) * a * a;
  }
  const CubicConstants c = cubic_constants(in);
  const double i2 = 2.0 * pi * eta.mean_square();
  const double i4 = 2.0 * pi * mean_fourth(eta);
  return 0.5 * in.s_star * eta.kinetic() +
         c.beta * c.beta / (4.0 * pi) * (c.alpha * i2 * i2 + c.gamma * i4);
}

DevelopmentReport verify_development(const DevelopmentInput& in, const FourierSeries1D& eta,
                                     const std::vector<int>& n_values) {
  if (n_values.size() < 3) throw DomainError("verify_development: need at least three n values");
  for (int n : n_values)
    if (n < 1) throw DomainError("verify_development: n must be positive");
  if (eta.order() < 1) throw DomainError("verify_development: eta is empty");
  if (in.kase == CaseTag::quadratic_cubic && in.s_star != 1 && in.s_star != -1)
    throw DomainError("verify_development: s* must be +1 or -1");

  DevelopmentReport rep;
  rep.kase = in.kase;
  rep.n_values = n_values;
  rep.psi = psi(in, eta);

  const auto v = field2d::FourierSeries2D::from_eta(eta, 1);
  const double kin_v = v.h1_squared();  // = 4 pi int eta'^2
  const bool quartic = in.kase == CaseTag::quartic;
  const auto power = field2d::power_even(v, quartic ? 4 : 2);
  const auto fourth = quartic ? power : field2d::power_even(v, 4);

  double a3_mean = 0.0;
  if (quartic) {
    rep.beta = quartic_beta(in.a4);
    rep.alpha_coef = in.a4 * in.a4 / (8.0 * pi);
    rep.remainder_scale = rep.alpha_coef * std::pow(rep.beta, 6);
    rep.mean_m = 2.0 * galerkin::quartic_A(eta);
    rep.limit_expected = std::pow(pi, 4) / 6.0 * rep.mean_m * rep.mean_m;
  } else {
    const CubicConstants c = cubic_constants(in);
    rep.beta = c.beta;
    rep.alpha_coef = c.alpha;
    rep.gamma = c.gamma;
    rep.remainder_scale = c.beta * c.beta / (4.0 * pi);
    a3_mean = in.a3_cos[0];
    const double i2 = 2.0 * pi * eta.mean_square();
    rep.limit_expected = pi * pi / 6.0 * i2 * i2;
  }

  std::vector<double> box_terms;
  for (int n : n_values) {
    const double dn = n;
    const auto f = power.dilated(n);
    const double box = field2d::ExactBoxInverse(f).pair(f);
    box_terms.push_back(box);

    const double kin_n = kinetic_by_quadrature(field2d::FourierSeries2D::from_eta(eta, n));
    rep.kinetic_defect.push_back(std::abs(kin_n - dn * dn * kin_v) / (dn * dn * kin_v));

    double value = 0.0;
    double r3 = 0.0;
    if (quartic) {
      value = kin_n / (8.0 * pi * dn * dn) - in.a4 * in.a4 * std::pow(rep.beta, 6) * box / (8.0 * pi);
    } else {
      const auto f4 = fourth.dilated(n);
      const double weighted = f4.integral_weighted(in.a3_cos);
      r3 = 0.25 * (weighted - a3_mean * f4.integral());
      value = in.s_star * kin_n / (8.0 * pi * dn * dn) +
              rep.remainder_scale * (-0.5 * in.a2 * in.a2 * box + 0.25 * weighted);
      rep.r3.push_back(r3);
    }
    rep.rescaled.push_back(value);
    const double dev = value - rep.psi - rep.remainder_scale * r3;
    rep.deviation.push_back(dev);
    rep.remainder.push_back(dn * dn * dev / rep.remainder_scale);
  }

  // Box term is c0 + c2 / n^2: extrapolate from the two largest n.
  const size_t k = n_values.size();
  const double n1 = n_values[k - 2];
  const double n2 = n_values[k - 1];
  rep.limit_value = (n2 * n2 * box_terms[k - 1] - n1 * n1 * box_terms[k - 2]) / (n2 * n2 - n1 * n1);

  bool all_nonzero = true;
  for (double d : rep.deviation) all_nonzero = all_nonzero && d != 0.0;
  rep.fitted_exponent = all_nonzero ? fitted_exponent(n_values, rep.deviation) : std::nan("");

  auto fail = [&](const std::string& what, double value) {
    std::ostringstream os;
    os << what << " = " << value;
    rep.failures.push_back(os.str());
  };
  if (!(rep.fitted_exponent >= 1.7 && rep.fitted_exponent <= 2.3))
    fail("fitted remainder exponent outside [1.7, 2.3]", rep.fitted_exponent);
  for (double d : rep.kinetic_defect)
    if (!(d <= 1e-13)) fail("kinetic identity defect", d);
  const double lim = std::abs(rep.limit_value - rep.limit_expected) / std::abs(rep.limit_expected);
  if (!(lim <= 1e-9)) fail("box-term limit defect", lim);
  if (!quartic) {
    const double scale = std::abs(rep.rescaled.back()) + 1.0;
    if (!(std::abs(rep.r3.back()) <= 1e-12 * scale)) fail("R3 at largest n", rep.r3.back());
  }
  return rep;
}

}  // namespace frwave::development
