#include "frwave/galerkin.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "frwave/bifurcation.hpp"
#include "frwave/error.hpp"

namespace frwave::galerkin {

namespace {

constexpr double pi = std::numbers::pi;

// Sine collocation: values, nonlinearity and projections on an M-point grid.
struct Collocation {
  int order;
  int points;
  Eigen::MatrixXd sines;  // points x order, sin(k t_i)

  explicit Collocation(int n) : order(n), points(collocation_points(n)), sines(points, n) {
    const double h = 2.0 * pi / points;
    for (int i = 0; i < points; ++i)
      for (int k = 1; k <= n; ++k)
        sines(i, k - 1) = std::sin(h * static_cast<double>((static_cast<long>(k) * i) % points));
  }

  Eigen::VectorXd values(const Eigen::VectorXd& b) const { return sines * b; }
  Eigen::VectorXd project(const Eigen::VectorXd& f) const {
    return (2.0 / points) * (sines.transpose() * f);
  }
  // (2/M) S^T diag(w) S: projection of multiplication by w.
  Eigen::MatrixXd multiplication(const Eigen::VectorXd& w) const {
    return (2.0 / points) * (sines.transpose() * w.asDiagonal() * sines);
  }
};

struct Averages {
  double eta2;
  double eta4;
};

Averages averages(const Eigen::VectorXd& b, const Eigen::VectorXd& eta) {
  return {0.5 * b.squaredNorm(), eta.array().pow(4).mean()};
}

Eigen::VectorXd as_vector(const FourierSeries1D& s) {
  const auto c = s.coefficients();
  return Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size()));
}

FourierSeries1D as_series(const Eigen::VectorXd& v) {
  return FourierSeries1D(std::vector<double>(v.data(), v.data() + v.size()));
}

Eigen::VectorXd kinetic_symbol(int n) {
  Eigen::VectorXd d(n);
  for (int k = 1; k <= n; ++k) d(k - 1) = static_cast<double>(k) * k;
  return d;
}

// P[F(eta)] and its derivative dP[F] with respect to the coefficients.
struct Nonlinearity {
  Eigen::VectorXd projected;
  Eigen::MatrixXd derivative;
};

Nonlinearity nonlinearity(const EquationSpec& eq, const Collocation& col, const Eigen::VectorXd& b,
                          bool with_derivative) {
  const Eigen::VectorXd eta = col.values(b);
  const Averages av = averages(b, eta);
  const Eigen::ArrayXd e = eta.array();
  Nonlinearity out;
  if (eq.is_quartic()) {
    const double a = av.eta4 + 3.0 * av.eta2 * av.eta2;
    const Eigen::VectorXd shape = (3.0 * av.eta2 * e + e.cube()).matrix();
    const Eigen::VectorXd p_shape = col.project(shape);
    out.projected = a * p_shape;
    if (with_derivative) {
      const Eigen::VectorXd p_cube = col.project(e.cube().matrix());
      const Eigen::VectorXd local = (a * (3.0 * av.eta2 + 3.0 * e.square())).matrix();
      // dA[h_k] = 4 <eta^3 h_k> + 12 <eta^2> <eta h_k> = 2 P_k[eta^3] + 6 <eta^2> b_k.
      const Eigen::VectorXd dA = 2.0 * p_cube + 6.0 * av.eta2 * b;
      out.derivative = col.multiplication(local) + (6.0 * a * 0.5) * b * b.transpose() +
                       p_shape * dA.transpose();
    }
    return out;
  }
  const double p = eq.p();
  const double q = eq.q();
  const Eigen::VectorXd f = (p * av.eta2 * e + q * e.cube()).matrix();
  out.projected = col.project(f);
  if (with_derivative) {
    const Eigen::VectorXd local = (p * av.eta2 + 3.0 * q * e.square()).matrix();
    out.derivative = col.multiplication(local) + p * b * b.transpose();
  }
  return out;
}

}  // namespace

int collocation_points(int order) {
  int m = 16;
  while (m <= 4 * order + 2) m *= 2;
  return m;
}

Eigen::VectorXd ode_residual(const EquationSpec& eq, const FourierSeries1D& eta) {
  const Collocation col(eta.order());
  const Eigen::VectorXd b = as_vector(eta);
  const auto nl = nonlinearity(eq, col, b, false);
  return b - (nl.projected.array() / kinetic_symbol(eta.order()).array()).matrix();
}

Eigen::MatrixXd ode_jacobian(const EquationSpec& eq, const FourierSeries1D& eta) {
  const Collocation col(eta.order());
  const Eigen::VectorXd b = as_vector(eta);
  const auto nl = nonlinearity(eq, col, b, true);
  const Eigen::VectorXd d = kinetic_symbol(eta.order());
  Eigen::MatrixXd jac = -(d.cwiseInverse().asDiagonal() * nl.derivative);
  jac.diagonal().array() += 1.0;
  return jac;
}

NewtonResult ode_newton(const EquationSpec& eq, int order, const FourierSeries1D& guess,
                        const NewtonOptions& options) {
  if (order < 8) throw DomainError("ode_newton: truncation order must be >= 8");
  const Collocation col(order);
  const Eigen::VectorXd d = kinetic_symbol(order);
  Eigen::VectorXd b = as_vector(guess.resized(order));

  auto residual = [&](const Eigen::VectorXd& x) {
    const auto nl = nonlinearity(eq, col, x, false);
    return Eigen::VectorXd(x - (nl.projected.array() / d.array()).matrix());
  };

  NewtonResult out;
  Eigen::VectorXd r = residual(b);
  double norm = r.norm();
  out.history.push_back(norm);
  Eigen::MatrixXd jac;
  for (int it = 0; it < options.max_iterations && norm >= options.tolerance; ++it) {
    const auto nl = nonlinearity(eq, col, b, true);
    jac = -(d.cwiseInverse().asDiagonal() * nl.derivative);
    jac.diagonal().array() += 1.0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
    if (!lu.isInvertible()) {
      const double smin = Eigen::JacobiSVD<Eigen::MatrixXd>(jac).singularValues().minCoeff();
      std::ostringstream os;
      os << "ode_newton: singular Jacobian (sigma_min = " << smin << ")";
      throw ConvergenceError(os.str());
    }
    const Eigen::VectorXd step = lu.solve(-r);
    double scale = 1.0;
    Eigen::VectorXd trial = b + step;
    Eigen::VectorXd rt = residual(trial);
    int backtracks = 0;
    while (rt.norm() >= norm && backtracks < options.max_backtracks) {
      scale *= 0.5;
      trial = b + scale * step;
      rt = residual(trial);
      ++backtracks;
    }
    if (rt.norm() >= norm) {
      // No decrease possible: we are at the rounding floor.
      break;
    }
    b = trial;
    r = rt;
    norm = r.norm();
    out.history.push_back(norm);
    out.iterations = it + 1;
  }
  if (!(norm < options.tolerance)) {
    std::ostringstream os;
    os << "ode_newton: no convergence, residual " << norm << " after " << out.iterations
       << " iterations";
    throw ConvergenceError(os.str());
  }
  out.solution = as_series(b);
  out.residual_norm = norm;
  out.min_singular_value =
      Eigen::JacobiSVD<Eigen::MatrixXd>(ode_jacobian(eq, out.solution)).singularValues().minCoeff();
  return out;
}

FunctionalValue functional_and_gradient(const EquationSpec& eq, const FourierSeries1D& eta) {
  const Collocation col(std::max(eta.order(), 1));
  const Eigen::VectorXd b = as_vector(eta);
  const Eigen::VectorXd values = col.values(b);
  const Averages av = averages(b, values);
  const auto nl = nonlinearity(eq, col, b, false);
  const Eigen::VectorXd d = kinetic_symbol(eta.order());
  const double kin = pi * d.dot(b.cwiseProduct(b));

  FunctionalValue out;
  // grad of the generic form is pi (D b - P[F]).
  Eigen::VectorXd grad = pi * (d.cwiseProduct(b) - nl.projected);
  if (eq.is_quartic()) {
    const double a = av.eta4 + 3.0 * av.eta2 * av.eta2;
    out.value = 0.5 * kin - (2.0 * pi / 8.0) * a * a;
  } else {
    out.value = 0.5 * kin - 0.5 * pi * eq.p() * av.eta2 * av.eta2 - 0.5 * pi * eq.q() * av.eta4;
    if (eq.kind == Equation::cubic_sstar) {
      out.value *= eq.s_star;
      grad *= eq.s_star;
    }
  }
  out.gradient = grad;
  return out;
}

Eigen::MatrixXd functional_hessian(const EquationSpec& eq, const FourierSeries1D& eta) {
  const Eigen::VectorXd d = kinetic_symbol(eta.order());
  Eigen::MatrixXd h = pi * (d.asDiagonal() * ode_jacobian(eq, eta));
  if (eq.kind == Equation::cubic_sstar) h *= eq.s_star;
  return h;
}

double quotient_Q(const FourierSeries1D& eta) {
  const Collocation col(std::max(eta.order(), 1));
  const Eigen::VectorXd b = as_vector(eta);
  const Averages av = averages(b, col.values(b));
  if (av.eta4 == 0.0) throw DomainError("quotient_Q: eta must be nonzero");
  return av.eta2 * av.eta2 / av.eta4;
}

double quartic_A(const FourierSeries1D& eta) {
  const Collocation col(std::max(eta.order(), 1));
  const Eigen::VectorXd b = as_vector(eta);
  const Averages av = averages(b, col.values(b));
  return av.eta4 + 3.0 * av.eta2 * av.eta2;
}

FourierSeries1D series_from_profile(const bifurcation::WaveProfile& g, int order) {
  int n = 2048;
  while (n <= 4 * order) n *= 2;
  return FourierSeries1D::project(g.sample(n), order);
}

double pointwise_residual(const EquationSpec& eq, const FourierSeries1D& eta, int grid) {
  const auto v = eta.sample(grid);
  std::vector<double> b2(eta.coefficients().begin(), eta.coefficients().end());
  for (int k = 1; k <= eta.order(); ++k) b2[k - 1] *= -static_cast<double>(k) * k;
  const auto vdd = FourierSeries1D(b2).sample(grid);
  double e2 = 0.0;
  double e4 = 0.0;
  for (double x : v) {
    e2 += x * x;
    e4 += x * x * x * x;
  }
  e2 /= grid;
  e4 /= grid;
  double worst = 0.0;
  for (int i = 0; i < grid; ++i) {
    double f;
    if (eq.is_quartic()) {
      f = (e4 + 3.0 * e2 * e2) * (3.0 * e2 * v[i] + v[i] * v[i] * v[i]);
    } else {
      f = eq.p() * e2 * v[i] + eq.q() * v[i] * v[i] * v[i];
    }
    worst = std::max(worst, std::abs(vdd[i] + f));
  }
  return worst;
}

OracleReport oracle_check(const bifurcation::WaveProfile& g, int order) {
  OracleReport rep;
  rep.equation = g.equation();
  rep.order = order;
  const auto solve = [&](int n) { return ode_newton(rep.equation, n, series_from_profile(g, n)); };
  const NewtonResult r = solve(order);
  rep.iterations = r.iterations;
  rep.residual_norm = r.residual_norm;
  rep.pointwise_residual = pointwise_residual(rep.equation, r.solution);
  rep.min_singular_value = r.min_singular_value;
  rep.min_singular_value_doubled = solve(2 * order).min_singular_value;

  const int grid = 1024;
  const auto s = r.solution.sample(grid);
  for (int i = 0; i < grid; ++i) {
    const double t = 2.0 * std::numbers::pi * i / grid;
    rep.sup_distance = std::max(rep.sup_distance, std::abs(s[static_cast<size_t>(i)] - g(t)));
  }

  auto fail = [&](const char* what, double v) {
    std::ostringstream os;
    os << what << " = " << v;
    rep.failures.push_back(os.str());
  };
  if (!(rep.sup_distance < 1e-7)) fail("sup distance to closed form", rep.sup_distance);
  if (!(rep.min_singular_value > 1e-3)) fail("smallest singular value", rep.min_singular_value);
  const double drift = std::abs(rep.min_singular_value_doubled - rep.min_singular_value) /
                       rep.min_singular_value;
  if (!(drift <= 0.1)) fail("singular value drift under doubling", drift);
  return rep;
}

}  // namespace frwave::galerkin
