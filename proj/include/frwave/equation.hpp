#pragma once

#include <string>
#include <string_view>

namespace frwave {

enum class CaseTag { quartic, quadratic_cubic };

/// The reduced 0th-order ODEs on odd 2*pi-periodic functions.
///   quartic_A       : eta'' + A(eta) (3 <eta^2> eta + eta^3) = 0
///   cubic_sstar     : -s* eta'' - <eta^2> eta + lambda eta^3 = 0
///   exterior_lambda : eta'' + <eta^2> eta + lambda eta^3 = 0
///   pure_cubic      : eta'' + eta^3 = 0
///   nonlocal_only   : eta'' + <eta^2> eta = 0
/// All but the quartic are written as eta'' + p <eta^2> eta + q eta^3 = 0.
enum class Equation { quartic_A, cubic_sstar, exterior_lambda, pure_cubic, nonlocal_only };

struct EquationSpec {
  Equation kind = Equation::quartic_A;
  int s_star = 1;
  double lambda = 0.0;

  static EquationSpec quartic() { return {Equation::quartic_A, 1, 0.0}; }
  static EquationSpec cubic(double lambda, int s_star) {
    return {Equation::cubic_sstar, s_star, lambda};
  }
  static EquationSpec exterior(double lambda, int s_star) {
    return {Equation::exterior_lambda, s_star, lambda};
  }
  static EquationSpec pure_cubic() { return {Equation::pure_cubic, -1, 0.0}; }
  static EquationSpec nonlocal_only() { return {Equation::nonlocal_only, 1, 0.0}; }

  bool is_quartic() const { return kind == Equation::quartic_A; }
  /// Coefficient of <eta^2> eta (cubic family only).
  double p() const;
  /// Coefficient of eta^3 (cubic family only).
  double q() const;
};

std::string_view to_string(Equation e);
std::string_view to_string(CaseTag c);
Equation equation_from_string(std::string_view s);
CaseTag case_from_string(std::string_view s);

}  // namespace frwave
