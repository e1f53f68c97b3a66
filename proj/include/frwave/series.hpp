#pragma once

#include <span>
#include <vector>

namespace frwave {

/// Odd real 2*pi-periodic trigonometric polynomial
///   eta(t) = sum_{k=1}^{N} b_k sin(k t),   coefficients()[k-1] = b_k.
class FourierSeries1D {
 public:
  FourierSeries1D() = default;
  explicit FourierSeries1D(int order) : b_(static_cast<size_t>(order), 0.0) {}
  explicit FourierSeries1D(std::vector<double> b) : b_(std::move(b)) {}

  int order() const { return static_cast<int>(b_.size()); }
  double& operator[](int k) { return b_.at(static_cast<size_t>(k - 1)); }
  double operator[](int k) const { return b_.at(static_cast<size_t>(k - 1)); }
  std::span<const double> coefficients() const { return b_; }
  std::vector<double>& data() { return b_; }

  double operator()(double t) const;
  double derivative(double t) const;
  /// Values on the uniform grid of n points over [0, 2*pi).
  std::vector<double> sample(int n) const;
  /// <eta^2> by Parseval.
  double mean_square() const;
  /// int_T eta'^2 = pi sum k^2 b_k^2.
  double kinetic() const;
  /// Highest k with |b_k| above tol * max |b|.
  int effective_order(double tol = 1e-17) const;
  FourierSeries1D resized(int order) const;
  FourierSeries1D scaled(double c) const;

  /// Sine coefficients of grid samples (exact for trig polynomials of degree < n/2).
  static FourierSeries1D project(std::span<const double> samples, int order);

 private:
  std::vector<double> b_;
};

double sup_distance(const FourierSeries1D& a, const FourierSeries1D& b, int grid = 1024);

}  // namespace frwave
