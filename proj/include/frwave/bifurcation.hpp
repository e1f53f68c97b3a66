#pragma once

// Construction of the 0th-order profiles g(t) = V sn(Omega t, m).

#include <optional>
#include <vector>

#include "frwave/equation.hpp"
#include "frwave/series.hpp"

namespace frwave::bifurcation {

struct NonlinearityCoefficients {
  CaseTag kase = CaseTag::quadratic_cubic;
  double a2 = 0.0;
  double a3_mean = 0.0;
  double a4 = 0.0;
  /// a5(pi-x) = -a5(x), a6 even, a7 odd about pi/2.  Recorded, not used at 0th order.
  bool higher_order_symmetric = true;
};

struct ReducedCoefficients {
  double alpha = 0.0;
  double gamma = 0.0;
  double beta = 0.0;
  double lambda = 0.0;
  int s_star = 1;
  EquationSpec equation;
};

/// One entry per admissible s*.  The degenerate cases <a3> = 0 and
/// alpha = 0 come back as a single nonlocal_only / pure_cubic entry.
std::vector<ReducedCoefficients> reduce_coefficients(const NonlinearityCoefficients& c);

class WaveProfile {
 public:
  WaveProfile() = default;
  /// Builds the profile for an already-solved parameter m and fills the
  /// amplitude/frequency from the equation's parameter relations.
  WaveProfile(EquationSpec eq, double m);

  EquationSpec equation() const { return eq_; }
  CaseTag case_tag() const {
    return eq_.is_quartic() ? CaseTag::quartic : CaseTag::quadratic_cubic;
  }
  double V() const { return V_; }
  double Omega() const { return Omega_; }
  double m() const { return m_; }
  int s_star() const { return eq_.s_star; }
  double lambda() const { return eq_.lambda; }
  double period() const;
  double residual_sup() const { return residual_sup_; }

  double operator()(double t) const;
  double derivative(double t) const;
  double second_derivative(double t) const;
  std::vector<double> sample(int n) const;

  /// Sup norm of the defining ODE residual on an n-point grid, by direct
  /// substitution of the elliptic derivatives.
  double ode_residual(int n = 512) const;
  /// Sup norm of g'' + Omega^2 (1+m) g - 2 m (Omega^2/V^2) g^3.
  double elliptic_bridge_residual(int n = 512) const;
  /// Relative defect of the first parameter relation,
  /// quartic: Omega^2 (1+m) = 3 A(g) <g^2>;  cubic family: Omega^2 (1+m) = p <g^2>.
  double parameter_relation_defect(int n = 4096) const;

  void set_residual(double r) { residual_sup_ = r; }

  /// Restores a serialized profile without re-solving.
  static WaveProfile restore(EquationSpec eq, double V, double Omega, double m,
                             double residual);

 private:
  EquationSpec eq_;
  double V_ = 0.0;
  double Omega_ = 0.0;
  double m_ = 0.0;
  double residual_sup_ = 0.0;
};

/// Root of (7+m)K(m) - 6E(m) in (-1, 0) to 1e-13.
double quartic_modulus();

WaveProfile solve_quartic_profile(double a4);

/// lambda = (2m/(1+m)) <sn^2(., m)>;  s* = -1 searches m < -1, s* = +1 searches (0,1).
WaveProfile solve_cubic_profile(double lambda, int s_star);

/// eta'' + <eta^2> eta + lambda eta^3 = 0, m in (-1, 0).
WaveProfile solve_exterior_profile(double lambda, int s_star);

/// Profiles for every admissible branch of a coefficient set.
std::vector<WaveProfile> solve_profiles(const NonlinearityCoefficients& c);

/// Right-hand side of the lambda-m relation, (2m/(1+m)) <sn^2>.
double lambda_of_modulus(double m);

struct DegenerateProfile {
  EquationSpec equation;
  WaveProfile closed_form;
  FourierSeries1D series;
  double residual = 0.0;
};

/// nonlocal_only: sqrt(2) sin t.  pure_cubic: Galerkin solution of
/// eta'' + eta^3 = 0 seeded from the m = -1 elliptic profile.
DegenerateProfile degenerate_profile(Equation tag);

/// omega(delta): quadratic_cubic sqrt(1 - 2 s* delta^2), quartic sqrt(1 - 2 delta^6).
double frequency_map(double delta, CaseTag kase, int s_star = 1);

}  // namespace frwave::bifurcation
