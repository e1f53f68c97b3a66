#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "frwave/equation.hpp"
#include "frwave/error.hpp"
#include "frwave/series.hpp"

namespace frwave {

double EquationSpec::p() const {
  switch (kind) {
    case Equation::cubic_sstar: return s_star;
    case Equation::exterior_lambda: return 1.0;
    case Equation::pure_cubic: return 0.0;
    case Equation::nonlocal_only: return 1.0;
    case Equation::quartic_A: break;
  }
  throw InternalError("EquationSpec::p: quartic equation has no cubic coefficients");
}

double EquationSpec::q() const {
  switch (kind) {
    case Equation::cubic_sstar: return -s_star * lambda;
    case Equation::exterior_lambda: return lambda;
    case Equation::pure_cubic: return 1.0;
    case Equation::nonlocal_only: return 0.0;
    case Equation::quartic_A: break;
  }
  throw InternalError("EquationSpec::q: quartic equation has no cubic coefficients");
}

std::string_view to_string(Equation e) {
  switch (e) {
    case Equation::quartic_A: return "quartic_A";
    case Equation::cubic_sstar: return "cubic_sstar";
    case Equation::exterior_lambda: return "exterior_lambda";
    case Equation::pure_cubic: return "pure_cubic";
    case Equation::nonlocal_only: return "nonlocal_only";
  }
  return "unknown";
}

std::string_view to_string(CaseTag c) {
  return c == CaseTag::quartic ? "quartic" : "quadratic_cubic";
}

Equation equation_from_string(std::string_view s) {
  for (Equation e : {Equation::quartic_A, Equation::cubic_sstar, Equation::exterior_lambda,
                     Equation::pure_cubic, Equation::nonlocal_only}) {
    if (to_string(e) == s) return e;
  }
  throw DomainError("unknown equation tag '" + std::string(s) + "'");
}

CaseTag case_from_string(std::string_view s) {
  if (s == "quartic") return CaseTag::quartic;
  if (s == "quadratic_cubic" || s == "cubic") return CaseTag::quadratic_cubic;
  throw DomainError("unknown case tag '" + std::string(s) + "'");
}

double FourierSeries1D::operator()(double t) const {
  double s = 0.0;
  for (int k = 1; k <= order(); ++k) s += b_[k - 1] * std::sin(k * t);
  return s;
}

double FourierSeries1D::derivative(double t) const {
  double s = 0.0;
  for (int k = 1; k <= order(); ++k) s += k * b_[k - 1] * std::cos(k * t);
  return s;
}

std::vector<double> FourierSeries1D::sample(int n) const {
  std::vector<double> out(n, 0.0);
  const double h = 2.0 * std::numbers::pi / n;
  for (int k = 1; k <= order(); ++k) {
    const double bk = b_[k - 1];
    if (bk == 0.0) continue;
    for (int i = 0; i < n; ++i) {
      // k*i reduced mod n keeps the argument small.
      out[i] += bk * std::sin(h * static_cast<double>((static_cast<long>(k) * i) % n));
    }
  }
  return out;
}

double FourierSeries1D::mean_square() const {
  double s = 0.0;
  for (double v : b_) s += v * v;
  return 0.5 * s;
}

double FourierSeries1D::kinetic() const {
  double s = 0.0;
  for (int k = 1; k <= order(); ++k) s += static_cast<double>(k) * k * b_[k - 1] * b_[k - 1];
  return std::numbers::pi * s;
}

int FourierSeries1D::effective_order(double tol) const {
  double mx = 0.0;
  for (double v : b_) mx = std::max(mx, std::abs(v));
  for (int k = order(); k >= 1; --k) {
    if (std::abs(b_[k - 1]) > tol * mx) return k;
  }
  return 0;
}

FourierSeries1D FourierSeries1D::resized(int n) const {
  std::vector<double> b(static_cast<size_t>(n), 0.0);
  for (int k = 0; k < std::min(n, order()); ++k) b[k] = b_[k];
  return FourierSeries1D(std::move(b));
}

FourierSeries1D FourierSeries1D::scaled(double c) const {
  std::vector<double> b = b_;
  for (double& v : b) v *= c;
  return FourierSeries1D(std::move(b));
}

FourierSeries1D FourierSeries1D::project(std::span<const double> samples, int n_order) {
  const int n = static_cast<int>(samples.size());
  if (2 * n_order >= n) throw DomainError("FourierSeries1D::project: grid too coarse for requested order");
  std::vector<double> b(static_cast<size_t>(n_order), 0.0);
  const double h = 2.0 * std::numbers::pi / n;
  for (int k = 1; k <= n_order; ++k) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      s += samples[i] * std::sin(h * static_cast<double>((static_cast<long>(k) * i) % n));
    b[k - 1] = 2.0 * s / n;
  }
  return FourierSeries1D(std::move(b));
}

double sup_distance(const FourierSeries1D& a, const FourierSeries1D& b, int grid) {
  const auto sa = a.sample(grid);
  const auto sb = b.sample(grid);
  double d = 0.0;
  for (int i = 0; i < grid; ++i) d = std::max(d, std::abs(sa[i] - sb[i]));
  return d;
}

}  // namespace frwave
