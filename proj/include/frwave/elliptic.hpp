#pragma once

// Complete elliptic integrals and Jacobi elliptic functions in the
// "parameter" convention m = k^2, valid for every real m < 1.

#include <functional>

namespace frwave::elliptic {

/// Elliptic parameter, m = k^2 < 1. Construction throws DomainError otherwise.
class Modulus {
 public:
  explicit Modulus(double m);
  double value() const noexcept { return m_; }
  double K() const;
  double E() const;

 private:
  double m_;
};

struct JacobiSample {
  double t;
  double am;
  double sn;
  double cn;
  double dn;
};

/// K(m) = int_0^{pi/2} (1 - m sin^2)^{-1/2}.  AGM for m in [0,1);
/// m < 0 goes through K(m) = K(m/(m-1)) / sqrt(1-m).
double complete_K(double m);

/// E(m) = int_0^{pi/2} (1 - m sin^2)^{1/2}.
double complete_E(double m);

/// Amplitude, sn, cn, dn at (t, m).  sn == sin(am) and cn == cos(am) exactly.
JacobiSample jacobi(double t, double m);

/// <sn^2(., m)> over one period, (K - E) / (m K); 1/2 at m = 0.
double mean_sn2(double m);

struct MeanRatios {
  double sn4;         // <sn^4>, by periodic quadrature
  double sn2_dn2;     // <sn^2/dn^2> = (1 - <sn^2>) / (1 - m)
  double sn4_dn2;     // <sn^4/dn^2> = (1 + (m-2)<sn^2>) / (m (1-m))
};

MeanRatios mean_ratios(double m, int points = 4096);

/// psi(m) = (7+m) K(m) - 6 E(m), defined on (-1, 0].
double psi_quartic(double m);

struct PhiEvaluation {
  double direct;      // (K - E)/(m K)
  double reciprocal;  // 1 - 1/mu + E(mu)/(mu K(mu)),  mu = m/(m-1)
};

/// phi(m) = <sn^2(., m)> along both evaluation paths.
PhiEvaluation phi_mean_map(double m);

/// phi'(m) from E' = (E-K)/(2m) and K' = (int (1-m sin^2)^{-3/2} - K)/(2m).
double phi_derivative(double m);

/// d sn / dt = cn dn.
inline double sn_derivative(const JacobiSample& s) { return s.cn * s.dn; }

/// Uniform trapezoid average of f(sn, cn, dn) over one period 4K(m).
double period_average(double m, const std::function<double(const JacobiSample&)>& f,
                      int points = 4096);

}  // namespace frwave::elliptic
