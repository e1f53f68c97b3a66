#pragma once

// Fourier-Galerkin machinery for the reduced ODEs on E (odd 2*pi-periodic
// functions), independent of the elliptic-function construction.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "frwave/equation.hpp"
#include "frwave/series.hpp"

namespace frwave::bifurcation {
class WaveProfile;
}

namespace frwave::galerkin {

struct NewtonOptions {
  double tolerance = 1e-12;
  int max_iterations = 60;
  int max_backtracks = 20;
};

struct NewtonResult {
  FourierSeries1D solution;
  int iterations = 0;
  double residual_norm = 0.0;
  double min_singular_value = 0.0;
  std::vector<double> history;
};

/// Collocation grid size used for an order-N series: a power of two > 4N.
int collocation_points(int order);

/// Coefficient-space residual, normalised by the kinetic symbol:
///   r_k = b_k - P_k[F(eta)] / k^2   for  eta'' + F(eta) = 0.
Eigen::VectorXd ode_residual(const EquationSpec& eq, const FourierSeries1D& eta);

/// Jacobian of ode_residual, I - diag(1/k^2) dP[F].
Eigen::MatrixXd ode_jacobian(const EquationSpec& eq, const FourierSeries1D& eta);

/// Newton iteration with residual backtracking.  Nonlocal averages are
/// exact (Parseval for <eta^2>, de-aliased collocation for <eta^4>).
NewtonResult ode_newton(const EquationSpec& eq, int order, const FourierSeries1D& guess,
                        const NewtonOptions& options = {});

struct FunctionalValue {
  double value = 0.0;
  Eigen::VectorXd gradient;
};

/// Reduced action Psi whose critical points solve the equation.
///   quartic_A   : 1/2 int eta'^2 - (2 pi / 8) A(eta)^2
///   cubic_sstar : s*/2 int eta'^2 + 1/(8 pi) [ -(int eta^2)^2 + 2 pi lambda int eta^4 ]
///   otherwise   : 1/2 int eta'^2 - p/(8 pi) (int eta^2)^2 - q/4 int eta^4
FunctionalValue functional_and_gradient(const EquationSpec& eq, const FourierSeries1D& eta);

/// Hessian of Psi in coefficient space.
Eigen::MatrixXd functional_hessian(const EquationSpec& eq, const FourierSeries1D& eta);

/// Q(eta) = (int eta^2)^2 / (2 pi int eta^4).
double quotient_Q(const FourierSeries1D& eta);

/// A(eta) = <eta^4> + 3 <eta^2>^2.
double quartic_A(const FourierSeries1D& eta);

/// Sine coefficients of a profile, projected from a fine grid.
FourierSeries1D series_from_profile(const bifurcation::WaveProfile& g, int order);

/// Sup norm of eta'' + F(eta) on a uniform grid.
double pointwise_residual(const EquationSpec& eq, const FourierSeries1D& eta, int grid = 1024);

struct OracleReport {
  EquationSpec equation;
  int order = 0;
  int iterations = 0;
  double residual_norm = 0.0;
  double pointwise_residual = 0.0;
  /// Sup-norm distance between the Newton solution and the closed-form profile.
  double sup_distance = 0.0;
  /// Smallest singular value of the Newton Jacobian at order N and 2N.
  double min_singular_value = 0.0;
  double min_singular_value_doubled = 0.0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

/// Galerkin Newton solve seeded by the profile's sine series, compared back
/// against the profile.  Gates: distance below 1e-7, sigma_min above 1e-3
/// and stable to 10% under doubling of the order.
OracleReport oracle_check(const bifurcation::WaveProfile& g, int order = 64);

}  // namespace frwave::galerkin
