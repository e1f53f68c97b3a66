#include "frwave/linearization.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "frwave/elliptic.hpp"
#include "frwave/error.hpp"
#include "frwave/spectral.hpp"

namespace frwave::linearization {

namespace {

constexpr double pi = std::numbers::pi;

double mean_of(const std::vector<double>& a) { return spectral::mean(a); }

std::vector<double> product(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

std::vector<double> cube(std::span<const double> a) {
  std::vector<double> out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] * a[i] * a[i];
  return out;
}

// int_0^{2 pi} t h(t) dt for periodic h: 2 pi^2 <h> - 2 pi <P>, P' = h - <h>, P(0) = 0.
double first_moment(std::span<const double> h) {
  const auto p = spectral::periodic_antiderivative(h);
  return 2.0 * pi * pi * spectral::mean(h) - 2.0 * pi * spectral::mean(p);
}

void gate(NondegeneracyCertificate& c, const std::string& name, double value, double tol) {
  c.identity_residuals[name] = value;
  if (!(value <= tol)) {
    std::ostringstream os;
    os << name << " = " << value << " exceeds " << tol;
    c.failures.push_back(os.str());
  }
}

void require(NondegeneracyCertificate& c, bool ok, const std::string& what) {
  if (!ok) c.failures.push_back(what);
}

// Shared pieces of both certificates.
void common_checks(NondegeneracyCertificate& c, const FundamentalPair& pair,
                   const CertificateTolerances& tol) {
  const double scale = std::max(1.0, std::abs(pair.rho));
  c.rho = pair.rho;
  gate(c, "rho_closed_form", std::abs(pair.rho - pair.rho_closed) / scale, tol.rho);
  gate(c, "rho_mean_form", std::abs(pair.rho - pair.rho_mean_form) / scale, tol.rho);
  gate(c, "wronskian_drift", pair.wronskian_drift, tol.wronskian);
  gate(c, "rhopos_defect", pair.rhopos_defect / scale, tol.rhopos);
  c.identity_residuals["v_closed_form"] = pair.closed_form_defect;
  try {
    const auto k = spectral_kernel_check(pair.profile);
    c.min_singular_value = k.min_singular_value;
    c.hill_only_singular_value = k.hill_only;
    c.informational["sigma_min_doubled"] = k.min_singular_value_doubled;
    require(c, k.min_singular_value > tol.sigma_min, "smallest singular value below threshold");
    require(c, k.hill_only > 0.0, "Hill part singular on odd functions");
  } catch (const ConvergenceError& e) {
    c.failures.push_back(e.what());
  }
}

}  // namespace

HillPotential hill_potential(const bifurcation::WaveProfile& g) {
  HillPotential h;
  const double m = g.m();
  const double v2 = g.V() * g.V();
  h.g2 = v2 * elliptic::mean_sn2(m);
  h.g4 = v2 * v2 * elliptic::mean_ratios(m).sn4;
  const EquationSpec eq = g.equation();
  if (eq.is_quartic()) {
    const double a = h.g4 + 3.0 * h.g2 * h.g2;
    h.c0 = 3.0 * a * h.g2;
    h.c2 = 3.0 * a;
  } else {
    h.c0 = eq.p() * h.g2;
    h.c2 = 3.0 * eq.q();
  }
  return h;
}

FundamentalPair fundamental_pair(const bifurcation::WaveProfile& g, const PairOptions& opt) {
  if (opt.points < 16 || opt.points % 2 != 0)
    throw DomainError("fundamental_pair: grid size must be even and >= 16");
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 2>;

  FundamentalPair pair;
  pair.profile = g;
  pair.hill = hill_potential(g);
  pair.n = opt.points;
  const int n = pair.n;
  const double m = g.m();
  const double om = g.Omega();
  const double h = 2.0 * pi / n;

  pair.t.resize(2 * n);
  pair.u_bar.resize(2 * n);
  pair.u_bar_dot.resize(2 * n);
  for (int i = 0; i < 2 * n; ++i) {
    const double t = h * i;
    const auto s = elliptic::jacobi(om * t, m);
    pair.t[i] = t;
    pair.u_bar[i] = s.cn * s.dn;
    pair.u_bar_dot[i] = om * (-s.sn * s.dn * s.dn - m * s.sn * s.cn * s.cn);
  }

  const HillPotential hill = pair.hill;
  auto rhs = [&g, hill](const State& x, State& dx, double t) {
    const double gt = g(t);
    dx[0] = x[1];
    dx[1] = -(hill.c0 + hill.c2 * gt * gt) * x[0];
  };
  pair.v_bar.reserve(2 * n);
  pair.v_bar_dot.reserve(2 * n);
  auto observer = [&pair](const State& x, double) {
    pair.v_bar.push_back(x[0]);
    pair.v_bar_dot.push_back(x[1]);
  };
  State x0{0.0, 1.0};
  auto stepper = odeint::make_controlled(opt.tolerance, opt.tolerance,
                                         odeint::runge_kutta_fehlberg78<State>());
  odeint::integrate_times(stepper, rhs, x0, pair.t.begin(), pair.t.end(), h / 8.0, observer);
  if (static_cast<int>(pair.v_bar.size()) != 2 * n)
    throw InternalError("fundamental_pair: integrator returned an incomplete trajectory");

  for (int i = 0; i < 2 * n; ++i) {
    const double w = pair.u_bar[i] * pair.v_bar_dot[i] - pair.u_bar_dot[i] * pair.v_bar[i];
    pair.wronskian_drift = std::max(pair.wronskian_drift, std::abs(w - 1.0));
  }

  double num = 0.0;
  double den = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = pair.v_bar[i + n] - pair.v_bar[i];
    num += d * pair.u_bar[i];
    den += pair.u_bar[i] * pair.u_bar[i];
  }
  pair.rho = num / den;
  for (int i = 0; i < n; ++i) {
    const double d = pair.v_bar[i + n] - pair.v_bar[i];
    pair.rhopos_defect = std::max(pair.rhopos_defect, std::abs(d - pair.rho * pair.u_bar[i]));
  }
  pair.periodic_part.resize(n);
  for (int i = 0; i < n; ++i)
    pair.periodic_part[i] = pair.v_bar[i] - pair.rho / (2.0 * pi) * pair.t[i] * pair.u_bar[i];

  // Energy-family closed form, with int_0^{Omega t} sn^2/dn^2 done spectrally.
  std::vector<double> ratio(n);
  std::vector<double> sn(2 * n);
  for (int i = 0; i < 2 * n; ++i) sn[i] = elliptic::jacobi(om * pair.t[i], m).sn;
  for (int i = 0; i < n; ++i) {
    const double dn2 = 1.0 - m * sn[i] * sn[i];
    ratio[i] = sn[i] * sn[i] / dn2;
  }
  const auto cum = spectral::cumulative_integral(ratio);
  const double full = 2.0 * pi * spectral::mean(ratio);
  const double coef = m / (m - 1.0);
  for (int i = 0; i < 2 * n; ++i) {
    const double integral = om * (i < n ? cum[i] : cum[i - n] + full);
    const double vc = sn[i] / (om * (1.0 - m)) +
                      coef * pair.u_bar[i] * (pair.t[i] + (1.0 + m) / om * integral);
    pair.closed_form_defect = std::max(pair.closed_form_defect, std::abs(vc - pair.v_bar[i]));
  }
  pair.rho_closed = coef * (2.0 * pi + (1.0 + m) * full);
  pair.rho_mean_form = coef * 2.0 * pi * (1.0 + (1.0 + m) * elliptic::mean_ratios(m).sn2_dn2);
  return pair;
}

double integral_against_v(const FundamentalPair& pair, std::span<const double> f) {
  if (static_cast<int>(f.size()) != pair.n) throw DomainError("integral_against_v: grid mismatch");
  const std::span<const double> u(pair.u_bar.data(), static_cast<size_t>(pair.n));
  const auto fu = product(f, u);
  const auto fp = product(f, pair.periodic_part);
  return pair.rho / (2.0 * pi) * first_moment(fu) + 2.0 * pi * spectral::mean(fp);
}

std::vector<double> green_apply(const FundamentalPair& pair, std::span<const double> f) {
  const int n = pair.n;
  if (static_cast<int>(f.size()) != n) throw DomainError("green_apply: grid mismatch");
  if (std::abs(pair.rho) < 1e-12) throw DomainError("green_apply: rho = 0, L is not defined");
  const std::span<const double> u(pair.u_bar.data(), static_cast<size_t>(n));
  const auto fu = product(f, u);
  const auto fp = product(f, pair.periodic_part);
  const auto G = spectral::cumulative_integral(fu);     // int_0^t f u
  const auto cG = spectral::cumulative_integral(G);
  const auto cfp = spectral::cumulative_integral(fp);
  const double b = integral_against_v(pair, f) / pair.rho;
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    // int_0^t f v = (rho / 2 pi) (t G - int_0^t G) + int_0^t f p
    const double fv = pair.rho / (2.0 * pi) * (pair.t[i] * G[i] - cG[i]) + cfp[i];
    out[i] = (G[i] + b) * pair.v_bar[i] - fv * pair.u_bar[i];
  }
  return out;
}

double rho_from_period_energy(const bifurcation::WaveProfile& g, const HillPotential& hill) {
  if (hill.c0 == 0.0 || hill.c2 == 0.0)
    throw DomainError("rho_from_period_energy: family is degenerate for this equation");
  const double qe = hill.c2 / 3.0;
  struct TE {
    double T;
    double E;
  };
  auto family = [&](double m) {
    const double om2 = hill.c0 / (1.0 + m);
    const double v2 = -2.0 * m * om2 / qe;
    return TE{4.0 * elliptic::complete_K(m) / std::sqrt(om2), 0.5 * v2 * om2};
  };
  const double m = g.m();
  const double step = 1e-4 * std::max(1.0, std::abs(m)) * std::min(1.0, std::abs(1.0 - m));
  const TE a = family(m - 2 * step);
  const TE b = family(m - step);
  const TE c = family(m + step);
  const TE d = family(m + 2 * step);
  const double dT = (a.T - 8.0 * b.T + 8.0 * c.T - d.T) / (12.0 * step);
  const double dE = (a.E - 8.0 * b.E + 8.0 * c.E - d.E) / (12.0 * step);
  const double gd0 = g.V() * g.Omega();
  return -(dT / dE) * gd0 * gd0;
}

namespace {

double kernel_sigma(const bifurcation::WaveProfile& g, const HillPotential& hill, int order,
                    bool nonlocal) {
  int points = 1024;
  while (points < 8 * order) points *= 2;
  const auto gs = g.sample(points);
  Eigen::MatrixXd S(points, order);
  const double h = 2.0 * pi / points;
  for (int i = 0; i < points; ++i)
    for (int k = 1; k <= order; ++k)
      S(i, k - 1) = std::sin(h * static_cast<double>((static_cast<long>(k) * i) % points));
  Eigen::VectorXd gv = Eigen::Map<const Eigen::VectorXd>(gs.data(), points);
  const Eigen::ArrayXd ga = gv.array();
  const Eigen::VectorXd q = (hill.c0 + hill.c2 * ga.square()).matrix();
  auto project = [&](const Eigen::VectorXd& f) -> Eigen::VectorXd {
    return (2.0 / points) * (S.transpose() * f);
  };
  Eigen::MatrixXd op = (2.0 / points) * (S.transpose() * q.asDiagonal() * S);
  if (nonlocal) {
    const Eigen::VectorXd pg = project(gv);
    const EquationSpec eq = g.equation();
    if (eq.is_quartic()) {
      const double g2 = hill.g2;
      const double g4 = hill.g4;
      const Eigen::VectorXd i1 =
          (6.0 * (9.0 * g2 * g2 + g4) * ga + 12.0 * g2 * ga.cube()).matrix();
      const Eigen::VectorXd i2 = (12.0 * g2 * ga + 4.0 * ga.cube()).matrix();
      const Eigen::VectorXd pg3 = project(ga.cube().matrix());
      op += project(i1) * (0.5 * pg).transpose() + project(i2) * (0.5 * pg3).transpose();
    } else {
      op += 2.0 * eq.p() * pg * (0.5 * pg).transpose();
    }
  }
  for (int k = 1; k <= order; ++k) op.row(k - 1) /= static_cast<double>(k) * k;
  op.diagonal().array() -= 1.0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(op);
  return svd.singularValues().minCoeff();
}

}  // namespace

KernelCheck spectral_kernel_check(const bifurcation::WaveProfile& g, int order) {
  if (order < 8) throw DomainError("spectral_kernel_check: order must be >= 8");
  const HillPotential hill = hill_potential(g);
  KernelCheck k;
  k.order = order;
  k.min_singular_value = kernel_sigma(g, hill, order, true);
  k.min_singular_value_doubled = kernel_sigma(g, hill, 2 * order, true);
  k.hill_only = kernel_sigma(g, hill, order, false);
  if (std::abs(k.min_singular_value_doubled - k.min_singular_value) >
      0.1 * std::abs(k.min_singular_value_doubled)) {
    std::ostringstream os;
    os << "spectral_kernel_check: sigma_min moved from " << k.min_singular_value << " to "
       << k.min_singular_value_doubled << " under doubling; increase the order";
    throw ConvergenceError(os.str());
  }
  return k;
}

A0ClosedForm A0_closed_form(double lambda, double m) {
  const double q = 2.0 - lambda * (1.0 + m) * (1.0 + m) / (2.0 * m);
  const double d = lambda * (1.0 - m) * (1.0 - m) * q;
  const double num = d - (1.0 - lambda) * (1.0 - lambda) * (1.0 + m) * (1.0 + m) + m * q * q;
  return {num / d, q};
}

NondegeneracyCertificate certificate_quartic(const FundamentalPair& pair,
                                             const CertificateTolerances& tol) {
  const auto& prof = pair.profile;
  if (!prof.equation().is_quartic()) throw DomainError("certificate_quartic: profile is not quartic");
  NondegeneracyCertificate c;
  c.equation = Equation::quartic_A;
  const int n = pair.n;
  const auto g = prof.sample(n);
  const auto g3 = cube(g);
  const double g2 = pair.hill.g2;
  const double g4 = pair.hill.g4;
  const double A = pair.hill.c2 / 3.0;

  std::vector<double> i1(n);
  std::vector<double> i2(n);
  for (int i = 0; i < n; ++i) {
    i1[i] = 6.0 * (9.0 * g2 * g2 + g4) * g[i] + 12.0 * g2 * g3[i];
    i2[i] = 12.0 * g[i] * g2 + 4.0 * g3[i];
  }
  const auto Lg = green_apply(pair, g);
  const auto Lg3 = green_apply(pair, g3);
  const auto LI1 = green_apply(pair, i1);
  const auto LI2 = green_apply(pair, i2);

  const double gLg = mean_of(product(g, Lg));
  const double igv = integral_against_v(pair, g);
  const double gLg_closed = pair.rho / (4.0 * pi * A) + igv * igv / (2.0 * pi * pair.rho);
  c.B_of_g = 1.0 + 6.0 * A * gLg;
  c.informational["gLg"] = gLg;
  c.informational["gLg_closed"] = gLg_closed;
  c.informational["A_of_g"] = A;
  c.informational["int_g3_v"] = 2.0 * pi * mean_of(product(g3, pair.periodic_part)) +
                                pair.rho / (2.0 * pi) *
                                    first_moment(product(g3, std::span<const double>(
                                                                 pair.u_bar.data(), n)));

  const double gLI1 = mean_of(product(g, LI1));
  const double gLI2 = mean_of(product(g, LI2));
  const double g3LI1 = mean_of(product(g3, LI1));
  const double g3LI2 = mean_of(product(g3, LI2));
  gate(c, "gLg_routes", std::abs(gLg - gLg_closed), tol.identity);
  gate(c, "id1", std::abs(2.0 * A * mean_of(product(g3, Lg)) - g2), tol.identity);
  gate(c, "id2", std::abs(2.0 * A * mean_of(product(g3, Lg3)) - g4), tol.identity);
  gate(c, "coefficienti_gLI1",
       std::abs(gLI1 - (6.0 * (g4 + 9.0 * g2 * g2) * gLg + 6.0 * g2 * g2 / A)), tol.identity);
  gate(c, "coefficienti_gLI2", std::abs(gLI2 - (12.0 * g2 * gLg + 2.0 * g2 / A)), tol.identity);
  gate(c, "coefficienti_g3LI1", std::abs(g3LI1 - 9.0 * g2), tol.identity);
  gate(c, "coefficienti_g3LI2", std::abs(g3LI2 - 2.0), tol.identity);
  // <g^3 h> / <g h> from the second averaged equation must be -3 <g^2>.
  gate(c, "reduction_ratio", std::abs(-g3LI1 / (1.0 + g3LI2) + 3.0 * g2), tol.identity);
  const double det = (1.0 + gLI1) * (1.0 + g3LI2) - gLI2 * g3LI1;
  c.informational["reduction_determinant"] = det;
  gate(c, "reduction_determinant", std::abs(det - 3.0 * c.B_of_g), tol.identity);
  gate(c, "L_symmetry", std::abs(mean_of(product(g, Lg3)) - mean_of(product(g3, Lg))),
       tol.identity);

  common_checks(c, pair, tol);
  try {
    const double rte = rho_from_period_energy(prof, pair.hill);
    c.informational["rho_TE"] = rte;
    gate(c, "rho_TE_relative", std::abs(rte - pair.rho) / std::abs(pair.rho), tol.te_relative);
  } catch (const DomainError& e) {
    c.failures.push_back(e.what());
  }
  require(c, pair.rho > 0.0, "rho must be positive in the quartic case");
  require(c, c.B_of_g > 0.0, "B(g) must be positive");
  return c;
}

NondegeneracyCertificate certificate_cubic(const FundamentalPair& pair,
                                           const CertificateTolerances& tol) {
  const auto& prof = pair.profile;
  const EquationSpec eq = prof.equation();
  if (eq.is_quartic()) throw DomainError("certificate_cubic: profile is quartic");
  NondegeneracyCertificate c;
  c.equation = eq.kind;
  const int n = pair.n;
  const double p = eq.p();
  const double q = eq.q();
  const double m = prof.m();

  if (eq.kind == Equation::nonlocal_only) {
    // The Hill part is h'' + h: v = sin t is periodic and rho vanishes, so
    // only the spectral check applies.
    c.rho = pair.rho;
    c.A0 = std::nan("");
    c.informational["rho"] = pair.rho;
    try {
      const auto k = spectral_kernel_check(prof);
      c.min_singular_value = k.min_singular_value;
      c.hill_only_singular_value = k.hill_only;
      require(c, k.min_singular_value > tol.sigma_min, "smallest singular value below threshold");
    } catch (const ConvergenceError& e) {
      c.failures.push_back(e.what());
    }
    return c;
  }

  const auto g = prof.sample(n);
  const auto Lg = green_apply(pair, g);
  const double gLg = mean_of(product(g, Lg));
  const double igv = integral_against_v(pair, g);
  c.A0 = 1.0 + 2.0 * p * gLg;
  c.informational["gLg"] = gLg;
  c.informational["int_g_v"] = igv;

  common_checks(c, pair, tol);
  gate(c, "L_symmetry",
       std::abs(mean_of(product(g, green_apply(pair, cube(g)))) - mean_of(product(cube(g), Lg))),
       tol.identity);

  if (q != 0.0) {
    const double gLg_ii = pair.rho / (4.0 * pi * q) + igv * igv / (2.0 * pi * pair.rho);
    const double A0_ii = 1.0 + 2.0 * p * gLg_ii;
    c.informational["A0_integral_route"] = A0_ii;
    gate(c, "A0_green_vs_integral", std::abs(c.A0 - A0_ii), tol.identity);
    try {
      const double rte = rho_from_period_energy(prof, pair.hill);
      c.informational["rho_TE"] = rte;
      gate(c, "rho_TE_relative", std::abs(rte - pair.rho) / std::abs(pair.rho), tol.te_relative);
    } catch (const DomainError&) {
      // pure cubic: no fixed-c0 family
    }
  }

  if (eq.kind == Equation::cubic_sstar) {
    const double lambda = eq.lambda;
    const int s = eq.s_star;
    const double phi = elliptic::mean_sn2(m);
    const double shape = 1.0 + m - 2.0 * m * phi;
    const double A0_mid =
        1.0 + 2.0 / lambda *
                  (-pair.rho / (4.0 * pi) +
                   pi * m * shape * shape / (pair.rho * std::pow(1.0 - m, 4)));
    const auto closed = A0_closed_form(lambda, m);
    c.informational["A0_intermediate"] = A0_mid;
    c.informational["A0_closed"] = closed.A0;
    c.informational["q"] = closed.q;
    gate(c, "A0_green_vs_intermediate", std::abs(c.A0 - A0_mid), tol.identity);
    gate(c, "A0_green_vs_closed", std::abs(c.A0 - closed.A0), tol.identity);
    // Display form of int g v; sign conventions may differ, informational only.
    const double display = pi * prof.V() * shape / (prof.Omega() * (1.0 - m) * (1.0 - m));
    c.informational["int_g_v_display"] = display;
    c.informational["int_g_v_display_defect"] = std::abs(std::abs(igv) - std::abs(display));
    require(c, closed.q > 0.0, "q(lambda, m) must be positive");
    require(c, (c.A0 > 0.0 ? 1 : -1) == -s, "sign(A0) must equal -s*");
    if (s == 1) require(c, pair.rho < 0.0, "rho must be negative for s* = +1");
    if (s == -1) require(c, pair.rho > 0.0, "rho must be positive for s* = -1");
  } else {
    require(c, c.A0 != 0.0, "A0 must be nonzero");
  }
  return c;
}

NondegeneracyCertificate certify(const bifurcation::WaveProfile& g,
                                 const CertificateTolerances& tol, const PairOptions& opt) {
  const auto pair = fundamental_pair(g, opt);
  return g.equation().is_quartic() ? certificate_quartic(pair, tol) : certificate_cubic(pair, tol);
}

}  // namespace frwave::linearization
