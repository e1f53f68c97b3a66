#include "frwave/bifurcation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include <boost/math/tools/roots.hpp>

#include "frwave/elliptic.hpp"
#include "frwave/error.hpp"
#include "frwave/galerkin.hpp"
#include "frwave/spectral.hpp"

namespace frwave::bifurcation {

namespace {

constexpr double pi = std::numbers::pi;

// Bracketed root of f on [lo, hi]; f(lo) and f(hi) must differ in sign.
template <class F>
double bracketed_root(F f, double lo, double hi, double tol, const char* who) {
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    std::ostringstream os;
    os << who << ": no sign change on [" << lo << ", " << hi << "]";
    throw InternalError(os.str());
  }
  std::uintmax_t iterations = 300;
  auto stop = [tol](double a, double b) {
    return std::abs(b - a) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
  };
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, stop, iterations);
  if (iterations >= 300) throw ConvergenceError(std::string(who) + ": root iteration did not converge");
  return 0.5 * (a + b);
}

double quartic_A_coefficient(double m) {
  const double phi = elliptic::mean_sn2(m);
  const auto ratios = elliptic::mean_ratios(m);
  return ratios.sn4 + 3.0 * phi * phi;
}

}  // namespace

std::vector<ReducedCoefficients> reduce_coefficients(const NonlinearityCoefficients& c) {
  if (c.kase != CaseTag::quadratic_cubic)
    throw DomainError("reduce_coefficients: only the quadratic-cubic case has a reduction table");
  if (c.a2 == 0.0 && c.a3_mean == 0.0)
    throw DomainError("reduce_coefficients: (a2, <a3>) must differ from (0, 0)");

  ReducedCoefficients r;
  r.alpha = (9.0 * c.a3_mean - pi * pi * c.a2 * c.a2) / 12.0;
  r.gamma = pi * c.a3_mean / 2.0;
  const double scale = std::max(std::abs(9.0 * c.a3_mean), pi * pi * c.a2 * c.a2);
  const bool alpha_zero = std::abs(r.alpha) <= 1e-14 * scale;

  if (c.a3_mean == 0.0) {
    r.beta = 1.0 / std::sqrt(2.0 * std::abs(r.alpha));
    r.s_star = 1;
    r.equation = EquationSpec::nonlocal_only();
    return {r};
  }
  if (alpha_zero) {
    r.alpha = 0.0;
    r.beta = std::sqrt(pi / r.gamma);
    r.s_star = -1;
    r.equation = EquationSpec::pure_cubic();
    return {r};
  }
  r.beta = 1.0 / std::sqrt(2.0 * std::abs(r.alpha));
  if (c.a3_mean < 0.0 || r.alpha > 0.0) {
    // Exterior: s* = -sign(alpha), lambda = gamma / (2 pi alpha) > 0.
    r.s_star = r.alpha > 0.0 ? -1 : 1;
    r.lambda = r.gamma / (2.0 * pi * r.alpha);
    r.equation = EquationSpec::exterior(r.lambda, r.s_star);
    return {r};
  }
  // 0 < <a3> < pi^2 a2^2 / 9: alpha < 0, both signs possible.
  r.lambda = r.gamma / (2.0 * pi * std::abs(r.alpha));
  std::vector<ReducedCoefficients> out;
  ReducedCoefficients minus = r;
  minus.s_star = -1;
  minus.equation = EquationSpec::cubic(r.lambda, -1);
  out.push_back(minus);
  if (r.lambda < 1.0) {
    ReducedCoefficients plus = r;
    plus.s_star = 1;
    plus.equation = EquationSpec::cubic(r.lambda, 1);
    out.push_back(plus);
  }
  return out;
}

WaveProfile::WaveProfile(EquationSpec eq, double m) : eq_(eq), m_(m) {
  Omega_ = 2.0 * elliptic::complete_K(m) / pi;
  double v2 = 0.0;
  if (eq.is_quartic()) {
    const double a = quartic_A_coefficient(m);
    const double v6 = -2.0 * m * Omega_ * Omega_ / a;
    if (!(v6 > 0.0)) throw DomainError("WaveProfile: quartic relation needs m < 0");
    V_ = std::pow(v6, 1.0 / 6.0);
    return;
  }
  if (eq.q() != 0.0) {
    v2 = -2.0 * m * Omega_ * Omega_ / eq.q();
  } else {
    v2 = Omega_ * Omega_ * (1.0 + m) / (eq.p() * elliptic::mean_sn2(m));
  }
  if (!(v2 > 0.0)) {
    std::ostringstream os;
    os << "WaveProfile: no positive amplitude for " << to_string(eq.kind) << " at m = " << m;
    throw DomainError(os.str());
  }
  V_ = std::sqrt(v2);
}

WaveProfile WaveProfile::restore(EquationSpec eq, double V, double Omega, double m,
                                 double residual) {
  WaveProfile p;
  p.eq_ = eq;
  p.V_ = V;
  p.Omega_ = Omega;
  p.m_ = m;
  p.residual_sup_ = residual;
  return p;
}

double WaveProfile::period() const { return 4.0 * elliptic::complete_K(m_) / Omega_; }

double WaveProfile::operator()(double t) const {
  return V_ * elliptic::jacobi(Omega_ * t, m_).sn;
}

double WaveProfile::derivative(double t) const {
  const auto s = elliptic::jacobi(Omega_ * t, m_);
  return V_ * Omega_ * s.cn * s.dn;
}

double WaveProfile::second_derivative(double t) const {
  const double sn = elliptic::jacobi(Omega_ * t, m_).sn;
  return V_ * Omega_ * Omega_ * (-(1.0 + m_) * sn + 2.0 * m_ * sn * sn * sn);
}

std::vector<double> WaveProfile::sample(int n) const {
  std::vector<double> g(n);
  const auto t = spectral::grid(n);
  for (int i = 0; i < n; ++i) g[i] = (*this)(t[i]);
  return g;
}

double WaveProfile::ode_residual(int n) const {
  // Direct substitution: g'' from the elliptic derivatives, averages from
  // the closed form <sn^2> and a fine period quadrature of sn^4.
  const double phi = elliptic::mean_sn2(m_);
  const double g2 = V_ * V_ * phi;
  const double g4 = std::pow(V_, 4) * elliptic::mean_ratios(m_).sn4;
  const auto t = spectral::grid(n);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double g = (*this)(t[i]);
    double f;
    if (eq_.is_quartic()) {
      f = (g4 + 3.0 * g2 * g2) * (3.0 * g2 * g + g * g * g);
    } else {
      f = eq_.p() * g2 * g + eq_.q() * g * g * g;
    }
    worst = std::max(worst, std::abs(second_derivative(t[i]) + f));
  }
  return worst;
}

double WaveProfile::elliptic_bridge_residual(int n) const {
  const auto t = spectral::grid(n);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double g = (*this)(t[i]);
    const double r = second_derivative(t[i]) + Omega_ * Omega_ * (1.0 + m_) * g -
                     2.0 * m_ * Omega_ * Omega_ / (V_ * V_) * g * g * g;
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

double WaveProfile::parameter_relation_defect(int n) const {
  const double phi = elliptic::mean_sn2(m_);
  const double g2 = V_ * V_ * phi;
  const double lhs = Omega_ * Omega_ * (1.0 + m_);
  double rhs;
  if (eq_.is_quartic()) {
    const double a = std::pow(V_, 4) * (elliptic::mean_ratios(m_, n).sn4 + 3.0 * phi * phi);
    rhs = 3.0 * a * g2;
  } else {
    rhs = eq_.p() * g2;
  }
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  return scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale;
}

double quartic_modulus() {
  // Coarse scan: psi must change sign exactly once on (-1, 0).
  int changes = 0;
  double prev = elliptic::psi_quartic(-1.0 + 1e-9);
  for (int i = 1; i <= 200; ++i) {
    const double m = -1.0 + i / 200.0;
    const double cur = elliptic::psi_quartic(m);
    if ((cur > 0.0) != (prev > 0.0)) ++changes;
    prev = cur;
  }
  if (changes != 1) throw InternalError("quartic_modulus: psi does not change sign exactly once");
  return bracketed_root([](double m) { return elliptic::psi_quartic(m); }, -0.5, -0.1, 1e-14,
                        "quartic_modulus");
}

WaveProfile solve_quartic_profile(double a4) {
  if (a4 == 0.0 || !std::isfinite(a4)) throw DomainError("solve_quartic_profile: a4 must be nonzero");
  WaveProfile p(EquationSpec::quartic(), quartic_modulus());
  p.set_residual(p.ode_residual());
  return p;
}

double lambda_of_modulus(double m) {
  if (m == -1.0) throw DomainError("lambda_of_modulus: m = -1 is singular");
  if (m == 0.0) return 0.0;
  return 2.0 * m / (1.0 + m) * elliptic::mean_sn2(m);
}

WaveProfile solve_cubic_profile(double lambda, int s_star) {
  if (s_star != 1 && s_star != -1) throw DomainError("solve_cubic_profile: s* must be +1 or -1");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw DomainError("solve_cubic_profile: lambda must be positive");
  double m = 0.0;
  if (s_star == 1) {
    if (!(lambda < 1.0)) throw DomainError("solve_cubic_profile: s* = +1 requires lambda in (0, 1)");
    const double hi = std::nextafter(1.0, 0.0);
    if (lambda_of_modulus(hi) <= lambda)
      throw DomainError("solve_cubic_profile: lambda too close to 1 for double precision");
    m = bracketed_root([lambda](double x) { return lambda_of_modulus(x) - lambda; }, 1e-300, hi,
                       1e-15, "solve_cubic_profile");
  } else {
    // m = -1 - exp(s): lambda runs from +inf (s -> -inf) down to 0 (s -> +inf).
    // 1 + m = -exp(s) is used directly; below s = -36 m rounds to -1.
    auto f = [lambda](double s) {
      const double m = -1.0 - std::exp(s);
      return -2.0 * m * std::exp(-s) * elliptic::mean_sn2(m) - lambda;
    };
    const double lo = -36.0;
    if (f(lo) <= 0.0) throw DomainError("solve_cubic_profile: lambda too large for double precision");
    const double hi = 700.0;
    if (f(hi) >= 0.0) throw DomainError("solve_cubic_profile: lambda too small for double precision");
    const double s = bracketed_root(f, lo, hi, 1e-14, "solve_cubic_profile");
    m = -1.0 - std::exp(s);
  }
  WaveProfile p(EquationSpec::cubic(lambda, s_star), m);
  p.set_residual(p.ode_residual());
  return p;
}

WaveProfile solve_exterior_profile(double lambda, int s_star) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw DomainError("solve_exterior_profile: lambda must be positive");
  // lambda = -2 m <sn^2> / (1+m) on m in (-1, 0), with m = -1 + exp(-s).
  auto f = [lambda](double s) {
    const double m = -1.0 + std::exp(-s);
    return -lambda_of_modulus(m) - lambda;
  };
  // f < 0 near m = 0 (s small), f > 0 near m = -1 (s large); scan for the first crossing.
  double lo = 1e-12;
  double flo = f(lo);
  if (flo >= 0.0) throw DomainError("solve_exterior_profile: lambda too small");
  double hi = lo;
  bool found = false;
  for (int i = 1; i <= 400; ++i) {
    hi = 1e-12 + 36.0 * i / 400.0;
    if (f(hi) > 0.0) {
      found = true;
      break;
    }
    lo = hi;
  }
  if (!found) throw DomainError("solve_exterior_profile: lambda too large for double precision");
  const double s = bracketed_root(f, lo, hi, 1e-14, "solve_exterior_profile");
  WaveProfile p(EquationSpec::exterior(lambda, s_star), -1.0 + std::exp(-s));
  p.set_residual(p.ode_residual());
  return p;
}

std::vector<WaveProfile> solve_profiles(const NonlinearityCoefficients& c) {
  if (c.kase == CaseTag::quartic) return {solve_quartic_profile(c.a4)};
  std::vector<WaveProfile> out;
  for (const auto& r : reduce_coefficients(c)) {
    switch (r.equation.kind) {
      case Equation::cubic_sstar:
        out.push_back(solve_cubic_profile(r.lambda, r.s_star));
        break;
      case Equation::exterior_lambda:
        out.push_back(solve_exterior_profile(r.lambda, r.s_star));
        break;
      case Equation::nonlocal_only:
      case Equation::pure_cubic: {
        auto d = degenerate_profile(r.equation.kind);
        d.closed_form.set_residual(d.closed_form.ode_residual());
        out.push_back(d.closed_form);
        break;
      }
      case Equation::quartic_A:
        throw InternalError("solve_profiles: quartic branch in a cubic reduction");
    }
  }
  return out;
}

DegenerateProfile degenerate_profile(Equation tag) {
  DegenerateProfile out;
  if (tag == Equation::nonlocal_only) {
    out.equation = EquationSpec::nonlocal_only();
    out.closed_form = WaveProfile(out.equation, 0.0);
    out.series = FourierSeries1D(std::vector<double>{std::sqrt(2.0)});
    out.residual = galerkin::pointwise_residual(out.equation, out.series);
    return out;
  }
  if (tag != Equation::pure_cubic)
    throw DomainError("degenerate_profile: tag must be nonlocal_only or pure_cubic");
  out.equation = EquationSpec::pure_cubic();
  out.closed_form = WaveProfile(out.equation, -1.0);
  constexpr int order = 64;
  const auto seed = galerkin::series_from_profile(out.closed_form, order);
  const auto solved = galerkin::ode_newton(out.equation, order, seed);
  out.series = solved.solution;
  out.residual = galerkin::pointwise_residual(out.equation, out.series);
  return out;
}

double frequency_map(double delta, CaseTag kase, int s_star) {
  if (!(delta >= 0.0)) throw DomainError("frequency_map: delta must be >= 0");
  if (s_star != 1 && s_star != -1) throw DomainError("frequency_map: s* must be +1 or -1");
  const double arg = kase == CaseTag::quartic ? 1.0 - 2.0 * std::pow(delta, 6)
                                              : 1.0 - 2.0 * s_star * delta * delta;
  if (!(arg > 0.0)) throw DomainError("frequency_map: omega(delta) undefined, radicand <= 0");
  return std::sqrt(arg);
}

}  // namespace frwave::bifurcation
