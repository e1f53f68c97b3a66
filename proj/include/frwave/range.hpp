#pragma once

// Lyapunov-Schmidt pieces at desk scale: the 0th-order bifurcation equation
// on V_n and the range equation on W for a fixed non-resonant omega.

#include <cstdint>
#include <optional>
#include <vector>

#include "frwave/equation.hpp"
#include "frwave/field2d.hpp"
#include "frwave/series.hpp"

namespace frwave::range {

/// f(x, u) = a2 u^2 + a3 u^3 (quadratic_cubic) or a4 u^4 (quartic).
struct Nonlinearity {
  CaseTag kase = CaseTag::quartic;
  double a4 = 1.0;
  double a2 = 1.0;
  /// a3(x) = sum_c a3_cos[c] cos(c x); only the mean enters the range solve.
  std::vector<double> a3_cos{0.5};
  int s_star = 1;
};

struct BifurcationOptions {
  int max_iterations = 40;
  double tolerance = 1e-12;  // relative, on the truncated residual
  double fd_step = 1e-7;
};

struct BifurcationSolve {
  int n = 1;
  /// v = H_n(sum_k c_k cos(kt) sin(kx)); eta has b_k = c_k / 2.
  FourierSeries1D eta;
  int iterations = 0;
  std::vector<double> history;
  /// Sup of the (0bif) residual over diagonal modes k <= 3N, relative to sup |Delta v|.
  double residual = 0.0;
  /// Same, restricted to modes beyond the truncation.
  double tail_residual = 0.0;
  field2d::FourierSeries2D v() const { return field2d::FourierSeries2D::from_eta(eta, n); }
};

/// Relative (0bif) residual components on diagonal modes n k, k = 1..kmax.
std::vector<double> bifurcation_residual(const Nonlinearity& f, const FourierSeries1D& eta, int n,
                                         int kmax);

/// Newton with a finite-difference Jacobian on the N diagonal modes of V_n,
/// seeded from the rescaled 0th-order profile eta_seed (for which
/// H_n(beta n^p eta_seed) is close to a solution).
BifurcationSolve solve_bifurcation(const Nonlinearity& f, const FourierSeries1D& eta_seed, int n,
                                   const BifurcationOptions& opt = {});

/// Amplitude factor beta n^{1/3} (quartic) or beta n (quadratic_cubic).
double seed_scale(const Nonlinearity& f, int n);

struct RangeConfig {
  double delta = 0.0;
  int n = 1;
  int L = 64;
  int J = 64;
  std::optional<double> omega;  // overrides the frequency-amplitude relation
  double divisor_threshold = 1e-6;
  double tolerance = 1e-9;
  int max_iterations = 200;
};

struct SmallDivisor {
  double value = 0.0;
  int l = 0;
  int j = 0;
};

/// min |omega^2 l^2 - j^2| over W modes with l a multiple of n, l <= L, j <= J.
SmallDivisor min_small_divisor(double omega, int n, int L, int J);

struct RangeSolveReport {
  double delta = 0.0;
  double omega = 1.0;
  int n = 1;
  int L = 0;
  int J = 0;
  SmallDivisor divisor;
  int iterations = 0;
  std::vector<double> residual_history;  // sup |L_omega w - Pi_W g| per step
  double residual = 0.0;
  bool converged = false;
  bool monotone = true;
  /// delta = 0: sup |w - (-a4 box^{-1} Pi_W v^4)| (or -a2 box^{-1} v^2).
  double closed_form_defect = 0.0;
  /// sup over V-modes of Pi_V v^4 (or v^2): membership of the power in W.
  double power_v_component = 0.0;
  field2d::FourierSeries2D w;
};

/// Solves  L_omega w = Pi_W g(delta, x, v + delta^p w)  on the truncated W,
/// with L_omega = -omega^2 d_tt + d_xx (multiplier omega^2 l^2 - j^2),
/// p = 3 (quartic) or 1 (quadratic_cubic), by simplified Newton (chord
/// iteration with the diagonal part L_omega).  Throws ResonanceError when a
/// divisor drops below the threshold.
RangeSolveReport range_solve(const Nonlinearity& f, const field2d::FourierSeries2D& v,
                             const RangeConfig& cfg);

struct SweepPoint {
  double delta0 = 0.0;
  int samples = 0;
  int good = 0;
  double fraction = 0.0;
};

struct SweepReport {
  std::uint64_t seed = 0;
  double threshold = 1e-3;
  int n = 1;
  int L = 0;
  int J = 0;
  std::vector<SweepPoint> points;
  bool increasing = false;  // fraction non-decreasing as delta0 shrinks
};

/// Monte-Carlo fraction of delta in [0, delta0] whose min small divisor is at
/// least `threshold`, for each delta0.  Samples come from one seeded stream
/// and are scored on `threads` workers; the result does not depend on the
/// thread count.
SweepReport delta_sweep(const Nonlinearity& f, const std::vector<double>& delta0, int samples,
                        std::uint64_t seed, int n, int L, int J, double threshold = 1e-3,
                        int threads = 0);

}  // namespace frwave::range
