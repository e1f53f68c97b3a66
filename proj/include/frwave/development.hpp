#pragma once

// Large-n behaviour of the reduced action Phi_n(v) = Phi_0(H_n v), checked
// against its limit Psi(eta) with exact (untruncated) box inverses.

#include <string>
#include <vector>

#include "frwave/equation.hpp"
#include "frwave/series.hpp"

namespace frwave::development {

struct DevelopmentInput {
  CaseTag kase = CaseTag::quartic;
  double a4 = 1.0;
  double a2 = 1.0;
  /// a3(x) = sum_c a3_cos[c] cos(c x) on (0, pi); a3_cos[0] is its mean.
  std::vector<double> a3_cos{0.5};
  int s_star = 1;
};

struct DevelopmentReport {
  CaseTag kase = CaseTag::quartic;
  std::vector<int> n_values;
  std::vector<double> rescaled;   // Phi_n(beta n^p v) / (4 pi beta^2 n^q)
  std::vector<double> deviation;  // rescaled - Psi, with the R3 part removed
  std::vector<double> remainder;  // n^2 * deviation / remainder_scale
  std::vector<double> r3;         // cubic only; R3 at each n
  std::vector<double> kinetic_defect;
  double psi = 0.0;
  double beta = 0.0;
  double alpha_coef = 0.0;       // quartic a4^2/(8 pi); cubic (9<a3> - pi^2 a2^2)/12
  double gamma = 0.0;            // cubic only
  double remainder_scale = 0.0;  // quartic a4^2 beta^6/(8 pi); cubic beta^2/(4 pi)
  double mean_m = 0.0;           // quartic <(eta(s1) - eta(s2))^4>
  double limit_value = 0.0;      // Richardson extrapolation of the box term
  double limit_expected = 0.0;   // its closed-form limit
  double fitted_exponent = 0.0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

/// Requires at least three n values.  Gates: fitted exponent in [1.7, 2.3],
/// kinetic identity to 1e-13, box-term limit to 1e-9 relative, and for the
/// cubic case R3 -> 0 at the largest n.
DevelopmentReport verify_development(const DevelopmentInput& in, const FourierSeries1D& eta,
                                     const std::vector<int>& n_values);

/// Psi(eta) for the input's case and constants.
double psi(const DevelopmentInput& in, const FourierSeries1D& eta);

/// Quartic rescaling constant (3 / (pi^2 a4^2))^{1/6}.
double quartic_beta(double a4);

/// Cubic rescaling constant: (2|alpha|)^{-1/2}, or (pi/gamma)^{1/2} when alpha = 0.
double cubic_beta(double a2, double a3_mean);

}  // namespace frwave::development
