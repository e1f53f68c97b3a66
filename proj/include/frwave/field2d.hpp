#pragma once

// Functions on the strip Omega = T x (0, pi): even in t, Dirichlet in x.

#include <Eigen/Dense>
#include <vector>

#include "frwave/series.hpp"

namespace frwave::field2d {

/// u(t, x) = sum_{l=0..L, j=1..J} c(l, j) cos(l t) sin(j x).
/// The diagonal l = j is the kernel space V, everything else is W.
class FourierSeries2D {
 public:
  FourierSeries2D() = default;
  FourierSeries2D(int L, int J) : c_(Eigen::MatrixXd::Zero(L + 1, J)) {}

  int L() const { return static_cast<int>(c_.rows()) - 1; }
  int J() const { return static_cast<int>(c_.cols()); }
  double& operator()(int l, int j) { return c_(l, j - 1); }
  double operator()(int l, int j) const { return c_(l, j - 1); }
  Eigen::MatrixXd& coefficients() { return c_; }
  const Eigen::MatrixXd& coefficients() const { return c_; }

  double value(double t, double x) const;

  /// H_n v for v = eta(t+x) - eta(t-x):  c(nk, nk) = 2 b_k.
  static FourierSeries2D from_eta(const FourierSeries1D& eta, int n = 1);
  /// Sine coefficients of the V component, read back as eta.
  FourierSeries1D eta_of_diagonal(int n = 1) const;

  /// u(n t, n x).
  FourierSeries2D dilated(int n) const;
  FourierSeries2D resized(int L, int J) const;

  /// int_Omega u^2 and int_Omega |grad u|^2, both by Parseval.
  double l2_squared() const;
  double h1_squared() const;
  double inner(const FourierSeries2D& other) const;
  double max_abs() const { return c_.size() ? c_.cwiseAbs().maxCoeff() : 0.0; }

  FourierSeries2D& operator+=(const FourierSeries2D& o);
  FourierSeries2D& operator-=(const FourierSeries2D& o);
  FourierSeries2D& operator*=(double s);

 private:
  Eigen::MatrixXd c_;
};

FourierSeries2D operator+(FourierSeries2D a, const FourierSeries2D& b);
FourierSeries2D operator-(FourierSeries2D a, const FourierSeries2D& b);
FourierSeries2D operator*(double s, FourierSeries2D a);

FourierSeries2D project_V(const FourierSeries2D& u);
FourierSeries2D project_W(const FourierSeries2D& u);

/// Box = d_tt - d_xx acts on cos(lt) sin(jx) as multiplication by j^2 - l^2.
FourierSeries2D box_apply(const FourierSeries2D& u);
/// Inverse of box on W.  Throws DomainError if any diagonal entry exceeds
/// `diagonal_tol` in absolute value.
FourierSeries2D box_inverse(const FourierSeries2D& u, double diagonal_tol = 1e-14);

/// Functions even in both variables:
///   f(t, x) = sum d(i, k) cos(s i t) cos(s k x),  s = stride.
/// Products of an even number of Dirichlet fields land here.
struct CosCosPolynomial {
  int stride = 1;
  Eigen::MatrixXd d;

  double value(double t, double x) const;
  CosCosPolynomial dilated(int n) const;
  /// Exact sine coefficients on (0, pi), truncated to l <= L, j <= J.
  FourierSeries2D sine_projection(int L, int J) const;
  /// int_Omega f.
  double integral() const;
  /// int_Omega a(x) f for a(x) = sum_c a_c cos(c x).
  double integral_weighted(const std::vector<double>& a_cos) const;
};

/// Exact product of two Dirichlet fields.
CosCosPolynomial multiply(const FourierSeries2D& a, const FourierSeries2D& b);
/// u^p, p even, by collocation on a grid fine enough to be exact.
CosCosPolynomial power_even(const FourierSeries2D& u, int p);
/// u^p, p odd, exact sine coefficients.
FourierSeries2D power_odd(const FourierSeries2D& u, int p);
/// Power-of-two grid size that resolves a trigonometric product of the given degree.
int product_grid(int degree);

/// w = box^{-1} Pi_W f for a cos-cos polynomial f, solved in closed form
/// mode by mode in t (no truncation in x).
///   l >= 1: w_l'' + l^2 w_l = -(f_l - sigma_l sin(lx)),  w_l(0) = w_l(pi) = 0,
///           int w_l sin(lx) = 0;
///   l = 0 : -w_0'' = f_0 with Dirichlet conditions.
class ExactBoxInverse {
 public:
  explicit ExactBoxInverse(const CosCosPolynomial& f);

  /// int_Omega w g for a cos-cos polynomial g.
  double pair(const CosCosPolynomial& g) const;
  double value(double t, double x) const;
  /// w_l(x) and its second derivative, for testing the mode equations.
  double mode_value(int l, double x) const;
  double mode_second_derivative(int l, double x) const;
  int modes() const { return static_cast<int>(modes_.size()); }
  int frequency(int i) const { return modes_[i].l; }

 private:
  struct Mode {
    int l = 0;
    std::vector<double> cos_coef;  // indexed by frequency / stride
    double sin_l = 0.0;
    double x_sin_l = 0.0;
    double x_cos_l = 0.0;
    double x1 = 0.0;
    double x2 = 0.0;
  };
  int stride_ = 1;
  std::vector<Mode> modes_;
};

/// Values on an nt x nx grid over [0, 2 pi) x [0, pi].
Eigen::MatrixXd sample(const FourierSeries2D& u, int nt, int nx);

}  // namespace frwave::field2d
