#include "frwave/range.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "frwave/bifurcation.hpp"
#include "frwave/development.hpp"
#include "frwave/error.hpp"

namespace frwave::range {

namespace {

constexpr double pi = std::numbers::pi;

using field2d::CosCosPolynomial;
using field2d::ExactBoxInverse;
using field2d::FourierSeries2D;

bool is_quartic(const Nonlinearity& f) { return f.kase == CaseTag::quartic; }

double a3_mean(const Nonlinearity& f) { return f.a3_cos.empty() ? 0.0 : f.a3_cos[0]; }

FourierSeries2D basis(int k) {
  FourierSeries2D phi(k, k);
  phi(k, k) = 1.0;
  return phi;
}

// Raw residual components (same units as Delta v) on modes n k, k = 1..kmax.
Eigen::VectorXd raw_residual(const Nonlinearity& f, const FourierSeries1D& eta, int n, int kmax) {
  const auto v = FourierSeries2D::from_eta(eta, 1);
  const auto v3 = field2d::power_odd(v, 3);
  const bool quartic = is_quartic(f);
  const ExactBoxInverse w(field2d::power_even(v, quartic ? 4 : 2).dilated(n));
  const double proj = 2.0 / (pi * pi);  // 1 / int_Omega phi_k^2
  Eigen::VectorXd r(kmax);
  for (int k = 1; k <= kmax; ++k) {
    const double nk = static_cast<double>(n) * k;
    const double c = k <= eta.order() ? 2.0 * eta[k] : 0.0;
    const auto phi = basis(k);
    if (quartic) {
      // Delta v + 4 a4^2 Pi_V(v^3 box^{-1} v^4), using <v^3 w, phi> = <w, v^3 phi>.
      const double b = w.pair(field2d::multiply(v3, phi).dilated(n));
      r(k - 1) = -2.0 * nk * nk * c + 4.0 * f.a4 * f.a4 * proj * b;
    } else {
      // -s* Delta v - 2 a2^2 Pi_V(v box^{-1} v^2) + Pi_V(a3 v^3).
      const double b = w.pair(field2d::multiply(v, phi).dilated(n));
      const double a3 = field2d::multiply(v3, phi).dilated(n).integral_weighted(f.a3_cos);
      r(k - 1) = 2.0 * f.s_star * nk * nk * c - 2.0 * f.a2 * f.a2 * proj * b + proj * a3;
    }
  }
  return r;
}

double laplacian_scale(const FourierSeries1D& eta, int n) {
  double s = 0.0;
  for (int k = 1; k <= eta.order(); ++k) {
    const double nk = static_cast<double>(n) * k;
    s = std::max(s, std::abs(2.0 * nk * nk * 2.0 * eta[k]));
  }
  return s;
}

}  // namespace

double seed_scale(const Nonlinearity& f, int n) {
  if (is_quartic(f)) return development::quartic_beta(f.a4) * std::cbrt(static_cast<double>(n));
  return development::cubic_beta(f.a2, a3_mean(f)) * n;
}

std::vector<double> bifurcation_residual(const Nonlinearity& f, const FourierSeries1D& eta, int n,
                                         int kmax) {
  if (n < 1 || kmax < 1) throw DomainError("bifurcation_residual: n and kmax must be positive");
  const double scale = laplacian_scale(eta, n);
  if (scale == 0.0) throw DomainError("bifurcation_residual: v must be nonzero");
  const Eigen::VectorXd r = raw_residual(f, eta, n, kmax) / scale;
  return {r.data(), r.data() + r.size()};
}

BifurcationSolve solve_bifurcation(const Nonlinearity& f, const FourierSeries1D& eta_seed, int n,
                                   const BifurcationOptions& opt) {
  if (n < 1) throw DomainError("solve_bifurcation: n must be positive");
  const int N = eta_seed.order();
  if (N < 1) throw DomainError("solve_bifurcation: empty seed");
  if (!is_quartic(f) && f.s_star != 1 && f.s_star != -1)
    throw DomainError("solve_bifurcation: s* must be +1 or -1");

  BifurcationSolve out;
  out.n = n;
  FourierSeries1D eta = eta_seed.scaled(seed_scale(f, n));
  const double scale = laplacian_scale(eta, n);
  if (scale == 0.0) throw DomainError("solve_bifurcation: seed must be nonzero");

  auto F = [&](const FourierSeries1D& e) { return Eigen::VectorXd(raw_residual(f, e, n, N) / scale); };
  Eigen::VectorXd r = F(eta);
  double norm = r.lpNorm<Eigen::Infinity>();
  out.history.push_back(norm);
  for (int it = 0; it < opt.max_iterations && norm >= opt.tolerance; ++it) {
    double bmax = 0.0;
    for (int k = 1; k <= N; ++k) bmax = std::max(bmax, std::abs(eta[k]));
    const double h = opt.fd_step * bmax;
    Eigen::MatrixXd jac(N, N);
    for (int k = 1; k <= N; ++k) {
      FourierSeries1D e = eta;
      e[k] += h;
      jac.col(k - 1) = (F(e) - r) / h;
    }
    const Eigen::VectorXd step = jac.fullPivLu().solve(-r);
    double t = 1.0;
    FourierSeries1D trial = eta;
    Eigen::VectorXd rt;
    for (int back = 0; back <= 20; ++back) {
      trial = eta;
      for (int k = 1; k <= N; ++k) trial[k] += t * step(k - 1);
      rt = F(trial);
      if (rt.lpNorm<Eigen::Infinity>() < norm) break;
      t *= 0.5;
    }
    if (!(rt.lpNorm<Eigen::Infinity>() < norm)) break;  // rounding floor
    eta = trial;
    r = rt;
    norm = r.lpNorm<Eigen::Infinity>();
    out.history.push_back(norm);
    out.iterations = it + 1;
  }
  if (!(norm < 1e3 * opt.tolerance)) {
    std::ostringstream os;
    os << "solve_bifurcation: residual " << norm << " after " << out.iterations << " iterations";
    throw ConvergenceError(os.str());
  }
  // Newton can slide onto the trivial branch v = 0; that is not a solution we want.
  if (laplacian_scale(eta, n) < 1e-6 * scale)
    throw ConvergenceError("solve_bifurcation: iteration collapsed onto the trivial solution");
  out.eta = eta;
  const auto full = bifurcation_residual(f, eta, n, 3 * N);
  for (int k = 1; k <= 3 * N; ++k) {
    const double a = std::abs(full[static_cast<size_t>(k - 1)]);
    out.residual = std::max(out.residual, a);
    if (k > N) out.tail_residual = std::max(out.tail_residual, a);
  }
  return out;
}

SmallDivisor min_small_divisor(double omega, int n, int L, int J) {
  if (n < 1 || L < 0 || J < 1) throw DomainError("min_small_divisor: bad truncation");
  SmallDivisor best{std::numeric_limits<double>::infinity(), 0, 0};
  const double w2 = omega * omega;
  for (int l = 0; l <= L; l += n)
    for (int j = 1; j <= J; ++j) {
      if (l == j) continue;
      const double d = std::abs(w2 * l * l - static_cast<double>(j) * j);
      if (d < best.value) best = {d, l, j};
    }
  return best;
}

RangeSolveReport range_solve(const Nonlinearity& f, const FourierSeries2D& v,
                             const RangeConfig& cfg) {
  if (cfg.L < 1 || cfg.J < 1 || cfg.n < 1) throw DomainError("range_solve: bad truncation");
  if (cfg.delta < 0.0) throw DomainError("range_solve: delta must be non-negative");
  RangeSolveReport rep;
  rep.delta = cfg.delta;
  rep.n = cfg.n;
  rep.L = cfg.L;
  rep.J = cfg.J;
  rep.omega = cfg.omega ? *cfg.omega
                        : bifurcation::frequency_map(cfg.delta, f.kase, f.s_star);
  rep.divisor = min_small_divisor(rep.omega, cfg.n, cfg.L, cfg.J);
  if (rep.divisor.value < cfg.divisor_threshold) {
    std::ostringstream os;
    os << "range_solve: small divisor " << rep.divisor.value << " at (l, j) = (" << rep.divisor.l
       << ", " << rep.divisor.j << ") for omega = " << rep.omega;
    throw ResonanceError(os.str(), rep.divisor.l, rep.divisor.j, rep.divisor.value);
  }

  const bool quartic = is_quartic(f);
  const FourierSeries2D vt = v.resized(cfg.L, cfg.J);
  const double eps = quartic ? std::pow(cfg.delta, 3) : cfg.delta;
  const double w2 = rep.omega * rep.omega;

  // Pi_W g(delta, x, v + eps w) on the truncated space.
  auto forcing = [&](const FourierSeries2D& w) {
    const FourierSeries2D u = vt + eps * w;
    FourierSeries2D g;
    if (quartic) {
      g = f.a4 * field2d::power_even(u, 4).sine_projection(cfg.L, cfg.J);
    } else {
      g = f.a2 * field2d::power_even(u, 2).sine_projection(cfg.L, cfg.J);
      if (cfg.delta != 0.0 && a3_mean(f) != 0.0)
        g += (cfg.delta * a3_mean(f)) * field2d::power_odd(u, 3).resized(cfg.L, cfg.J);
    }
    return field2d::project_W(g);
  };
  auto apply_L = [&](const FourierSeries2D& w) {
    FourierSeries2D out = w;
    for (int l = 0; l <= cfg.L; ++l)
      for (int j = 1; j <= cfg.J; ++j) out(l, j) *= w2 * l * l - static_cast<double>(j) * j;
    return out;
  };
  auto invert_L = [&](const FourierSeries2D& g) {
    FourierSeries2D out(cfg.L, cfg.J);
    for (int l = 0; l <= cfg.L; ++l)
      for (int j = 1; j <= cfg.J; ++j)
        if (l != j && l % cfg.n == 0) out(l, j) = g(l, j) / (w2 * l * l - static_cast<double>(j) * j);
    return out;
  };

  FourierSeries2D w(cfg.L, cfg.J);
  for (int it = 0; it <= cfg.max_iterations; ++it) {
    const FourierSeries2D g = forcing(w);
    const double res = (apply_L(w) - g).max_abs();
    if (!rep.residual_history.empty() && res >= rep.residual_history.back()) rep.monotone = false;
    rep.residual_history.push_back(res);
    rep.residual = res;
    rep.iterations = it;
    if (res < cfg.tolerance) {
      rep.converged = true;
      break;
    }
    if (!std::isfinite(res)) break;
    double best = res;
    for (double h : rep.residual_history) best = std::min(best, h);
    if (res > 1e6 * best) break;  // diverging
    w = invert_L(g);
  }
  rep.w = w;

  const auto power = field2d::power_even(vt, quartic ? 4 : 2).sine_projection(cfg.L, cfg.J);
  rep.power_v_component = field2d::project_V(power).max_abs();
  if (cfg.delta == 0.0 && !cfg.omega) {
    const double a = quartic ? f.a4 : f.a2;
    const FourierSeries2D closed = -a * field2d::box_inverse(field2d::project_W(power));
    rep.closed_form_defect = (w - closed).max_abs();
  }
  if (!rep.converged) {
    std::ostringstream os;
    os << "range_solve: residual " << rep.residual << " after " << rep.iterations
       << " chord steps (divisor " << rep.divisor.value << ")";
    throw ConvergenceError(os.str());
  }
  return rep;
}

SweepReport delta_sweep(const Nonlinearity& f, const std::vector<double>& delta0, int samples,
                        std::uint64_t seed, int n, int L, int J, double threshold, int threads) {
  if (samples < 1) throw DomainError("delta_sweep: samples must be positive");
  SweepReport rep;
  rep.seed = seed;
  rep.threshold = threshold;
  rep.n = n;
  rep.L = L;
  rep.J = J;

  std::mt19937_64 rng(seed);
  std::vector<double> deltas;
  deltas.reserve(delta0.size() * static_cast<size_t>(samples));
  for (double d0 : delta0) {
    if (!(d0 > 0.0)) throw DomainError("delta_sweep: delta0 must be positive");
    std::uniform_real_distribution<double> dist(0.0, d0);
    for (int i = 0; i < samples; ++i) deltas.push_back(dist(rng));
  }
  // Validate the frequency map up front so workers never throw.
  for (double d0 : delta0) bifurcation::frequency_map(d0, f.kase, f.s_star);

  std::vector<char> good(deltas.size(), 0);
  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, 64);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (size_t i = static_cast<size_t>(w); i < deltas.size(); i += static_cast<size_t>(workers)) {
        const double om = bifurcation::frequency_map(deltas[i], f.kase, f.s_star);
        good[i] = min_small_divisor(om, n, L, J).value >= threshold ? 1 : 0;
      }
    });
  }
  for (auto& t : pool) t.join();

  for (size_t p = 0; p < delta0.size(); ++p) {
    SweepPoint pt;
    pt.delta0 = delta0[p];
    pt.samples = samples;
    for (int i = 0; i < samples; ++i) pt.good += good[p * static_cast<size_t>(samples) + i];
    pt.fraction = static_cast<double>(pt.good) / samples;
    rep.points.push_back(pt);
  }
  // Sort by shrinking delta0 and check the fraction never drops.
  std::vector<SweepPoint> sorted = rep.points;
  std::sort(sorted.begin(), sorted.end(),
            [](const SweepPoint& a, const SweepPoint& b) { return a.delta0 > b.delta0; });
  rep.increasing = true;
  for (size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i].fraction < sorted[i - 1].fraction) rep.increasing = false;
  return rep;
}

}  // namespace frwave::range
