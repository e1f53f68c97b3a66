#include "frwave/elliptic.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "frwave/error.hpp"

namespace frwave::elliptic {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double eps = std::numeric_limits<double>::epsilon();

void require_below_one(double m, const char* who) {
  if (!(m < 1.0)) {
    std::ostringstream os;
    os << who << ": elliptic parameter m = " << m << " must satisfy m < 1";
    throw DomainError(os.str());
  }
}

struct AgmResult {
  double K;
  double E;
};

// Arithmetic-geometric mean for 0 <= m < 1, with complementary parameter
// mc = 1 - m passed separately so that m -> 1 keeps full precision.
AgmResult agm_KE(double m, double mc) {
  double a = 1.0;
  double b = std::sqrt(mc);
  double c = std::sqrt(m);
  double power = 0.5;
  double sum = power * c * c;
  for (int it = 0; it < 64; ++it) {
    if (std::abs(c) <= eps * a) break;
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    c = 0.5 * (a - b);
    a = an;
    b = bn;
    power *= 2.0;
    sum += power * c * c;
  }
  const double K = pi / (2.0 * a);
  return {K, K * (1.0 - sum)};
}

AgmResult complete_KE(double m) {
  if (m >= 0.0) return agm_KE(m, 1.0 - m);
  // Reciprocal-parameter transform onto mu = m/(m-1) in (0,1).
  const double mc_mu = 1.0 / (1.0 - m);
  const double mu = -m * mc_mu;
  const AgmResult r = agm_KE(mu, mc_mu);
  const double s = std::sqrt(1.0 - m);
  return {r.K / s, r.E * s};
}

// Descending Landen / AGM scheme for the amplitude, 0 <= m < 1, with the
// complementary parameter mc = 1 - m supplied separately.
double amplitude_nonnegative(double t, double m, double mc) {
  if (m == 0.0) return t;
  std::array<double, 40> a{};
  std::array<double, 40> c{};
  a[0] = 1.0;
  double b = std::sqrt(mc);
  c[0] = std::sqrt(m);
  int n = 0;
  while (std::abs(c[n]) > eps * a[n] && n + 1 < static_cast<int>(a.size())) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  double phi = std::ldexp(a[n] * t, n);
  for (int k = n; k > 0; --k) {
    phi = 0.5 * (phi + std::asin(c[k] * std::sin(phi) / a[k]));
  }
  return phi;
}

double amplitude(double t, double m) {
  if (m >= 0.0) return amplitude_nonnegative(t, m, 1.0 - m);
  // sn(t|m) = sd(t sqrt(1-m) | mu) / sqrt(1-m), cn(t|m) = cd(t sqrt(1-m) | mu).
  const double s = std::sqrt(1.0 - m);
  const double mc_mu = 1.0 / (1.0 - m);
  const double mu = -m * mc_mu;
  const double u = t * s;
  const double am_mu = amplitude_nonnegative(u, mu, mc_mu);
  const double sn_mu = std::sin(am_mu);
  const double cn_mu = std::cos(am_mu);
  // Both amplitudes advance by pi over the same half period; the difference
  // stays inside (-pi/2, pi/2).
  const double shifted = std::atan2(sn_mu / s, cn_mu);
  return am_mu + std::remainder(shifted - am_mu, 2.0 * pi);
}

// int_0^{pi/2} sin^2 / sqrt(1 - m sin^2), by the periodic trapezoid rule.
double sin2_integral(double m) {
  constexpr int n = 64;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = std::sin(pi * i / n);
    sum += s * s / std::sqrt(1.0 - m * s * s);
  }
  return 0.5 * pi * sum / n;
}

}  // namespace

Modulus::Modulus(double m) : m_(m) { require_below_one(m, "Modulus"); }
double Modulus::K() const { return complete_K(m_); }
double Modulus::E() const { return complete_E(m_); }

double complete_K(double m) {
  require_below_one(m, "complete_K");
  return complete_KE(m).K;
}

double complete_E(double m) {
  require_below_one(m, "complete_E");
  return complete_KE(m).E;
}

JacobiSample jacobi(double t, double m) {
  require_below_one(m, "jacobi");
  const double am = amplitude(t, m);
  const double sn = std::sin(am);
  const double cn = std::cos(am);
  const double dn = std::sqrt(1.0 - m * sn * sn);
  return {t, am, sn, cn, dn};
}

double mean_sn2(double m) {
  require_below_one(m, "mean_sn2");
  if (m == 0.0) return 0.5;
  const AgmResult ke = complete_KE(m);
  if (std::abs(m) < 0.05) return sin2_integral(m) / ke.K;
  return (ke.K - ke.E) / (m * ke.K);
}

double period_average(double m, const std::function<double(const JacobiSample&)>& f,
                      int points) {
  require_below_one(m, "period_average");
  if (points < 8) throw DomainError("period_average: need at least 8 points");
  const double period = 4.0 * complete_K(m);
  double sum = 0.0;
  for (int i = 0; i < points; ++i) sum += f(jacobi(period * i / points, m));
  return sum / points;
}

MeanRatios mean_ratios(double m, int points) {
  require_below_one(m, "mean_ratios");
  MeanRatios r{};
  r.sn4 = period_average(
      m, [](const JacobiSample& s) { return s.sn * s.sn * s.sn * s.sn; }, points);
  if (std::abs(m) < 1e-3) {
    // The rational forms cancel catastrophically near m = 0.
    r.sn2_dn2 = period_average(
        m, [](const JacobiSample& s) { return s.sn * s.sn / (s.dn * s.dn); }, points);
    r.sn4_dn2 = period_average(
        m, [](const JacobiSample& s) { return std::pow(s.sn, 4) / (s.dn * s.dn); },
        points);
    return r;
  }
  const double phi = mean_sn2(m);
  r.sn2_dn2 = (1.0 - phi) / (1.0 - m);
  r.sn4_dn2 = (1.0 + (m - 2.0) * phi) / (m * (1.0 - m));
  return r;
}

double psi_quartic(double m) {
  if (!(m > -1.0 && m <= 0.0)) {
    std::ostringstream os;
    os << "psi_quartic: m = " << m << " outside (-1, 0]";
    throw DomainError(os.str());
  }
  const AgmResult ke = complete_KE(m);
  return (7.0 + m) * ke.K - 6.0 * ke.E;
}

PhiEvaluation phi_mean_map(double m) {
  require_below_one(m, "phi_mean_map");
  PhiEvaluation out{};
  out.direct = mean_sn2(m);
  if (m == 0.0) {
    out.reciprocal = 0.5;
    return out;
  }
  const double mu = m / (m - 1.0);
  const AgmResult ke = complete_KE(mu);
  out.reciprocal = 1.0 - 1.0 / mu + ke.E / (mu * ke.K);
  return out;
}

double phi_derivative(double m) {
  require_below_one(m, "phi_derivative");
  if (std::abs(m) < 1e-2) {
    const double h = 1e-4;
    return (mean_sn2(m + h) - mean_sn2(m - h)) / (2.0 * h);
  }
  const AgmResult ke = complete_KE(m);
  // int_0^{pi/2} (1 - m sin^2)^{-3/2} = E / (1 - m).
  const double j = ke.E / (1.0 - m);
  return (ke.E * j - ke.K * ke.K) / (2.0 * m * m * ke.K * ke.K);
}

}  // namespace frwave::elliptic
