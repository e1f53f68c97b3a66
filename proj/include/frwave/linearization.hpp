#pragma once

// Variational equation at a profile g:  h'' + Q(t) h + N(h) = 0 with the
// Hill potential Q = c0 + c2 g^2 and a finite-rank nonlocal part N.

#include <map>
#include <span>
#include <string>
#include <vector>

#include "frwave/bifurcation.hpp"

namespace frwave::linearization {

/// Q = c0 + c2 g^2, plus the averages the coefficients were built from.
struct HillPotential {
  double c0 = 0.0;
  double c2 = 0.0;
  double g2 = 0.0;  // <g^2>
  double g4 = 0.0;  // <g^4>
};

HillPotential hill_potential(const bifurcation::WaveProfile& g);

struct FundamentalPair {
  bifurcation::WaveProfile profile;
  HillPotential hill;
  int n = 0;                       // grid points per period
  std::vector<double> t;           // 2n points covering [0, 4 pi)
  std::vector<double> u_bar;       // even, 2 pi periodic
  std::vector<double> u_bar_dot;
  std::vector<double> v_bar;       // odd, v(t + 2 pi) - v(t) = rho u(t)
  std::vector<double> v_bar_dot;
  std::vector<double> periodic_part;  // v - (rho / 2 pi) t u on [0, 2 pi)
  double rho = 0.0;                // least-squares fit
  double rho_closed = 0.0;         // m/(m-1) [2 pi + (1+m) int sn^2/dn^2]
  double rho_mean_form = 0.0;      // m/(m-1) 2 pi (1 + (1+m) <sn^2/dn^2>)
  double wronskian_drift = 0.0;
  double rhopos_defect = 0.0;
  double closed_form_defect = 0.0;  // sup |v_ode - v_closed| on [0, 4 pi)
};

struct PairOptions {
  int points = 512;
  double tolerance = 1e-13;
};

/// u = g'/g'(0) in closed form; v by 7/8-order Runge-Kutta with a
/// cross-check against the energy-family closed form.
FundamentalPair fundamental_pair(const bifurcation::WaveProfile& g, const PairOptions& opt = {});

/// L(f) for f sampled on the pair's [0, 2 pi) grid.
std::vector<double> green_apply(const FundamentalPair& pair, std::span<const double> f);

/// int_0^{2 pi} f v for a periodic f on the pair's grid.
double integral_against_v(const FundamentalPair& pair, std::span<const double> f);

/// Finite-difference -(dT/dE) g'(0)^2 across the orbit family through g.
double rho_from_period_energy(const bifurcation::WaveProfile& g, const HillPotential& hill);

struct KernelCheck {
  int order = 0;
  double min_singular_value = 0.0;
  double min_singular_value_doubled = 0.0;
  double hill_only = 0.0;
};

/// Smallest singular value of -I + D^{-1}(Q + N) on sin(kt), k <= order,
/// D = diag(k^2).  Throws ConvergenceError if doubling the order moves it
/// by more than 10%.
KernelCheck spectral_kernel_check(const bifurcation::WaveProfile& g, int order = 128);

struct NondegeneracyCertificate {
  Equation equation = Equation::quartic_A;
  double rho = 0.0;
  double B_of_g = 0.0;  // quartic
  double A0 = 0.0;      // cubic family
  double min_singular_value = 0.0;
  double hill_only_singular_value = 0.0;
  std::map<std::string, double> identity_residuals;
  std::map<std::string, double> informational;
  std::vector<std::string> failures;
  bool accepted() const { return failures.empty(); }
};

struct CertificateTolerances {
  double identity = 1e-7;
  double rho = 1e-8;
  double wronskian = 1e-9;
  double rhopos = 1e-8;
  double te_relative = 1e-2;
  double sigma_min = 1e-3;
};

NondegeneracyCertificate certificate_quartic(const FundamentalPair& pair,
                                             const CertificateTolerances& tol = {});
NondegeneracyCertificate certificate_cubic(const FundamentalPair& pair,
                                           const CertificateTolerances& tol = {});
/// Dispatches on the profile's equation.
NondegeneracyCertificate certify(const bifurcation::WaveProfile& g,
                                 const CertificateTolerances& tol = {},
                                 const PairOptions& opt = {});

/// Rational closed form of A0 in (lambda, m) and its auxiliary q.
struct A0ClosedForm {
  double A0;
  double q;
};
A0ClosedForm A0_closed_form(double lambda, double m);

}  // namespace frwave::linearization
