#include "frwave/field2d.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "frwave/error.hpp"

namespace frwave::field2d {

namespace {

constexpr double pi = std::numbers::pi;

double parity(long c) { return (std::labs(c) % 2 == 0) ? 1.0 : -1.0; }

// int_0^pi cos(t) weight in t: 2 pi for l = 0, pi otherwise.
double t_norm(int l) { return l == 0 ? 2.0 * pi : pi; }

// int_0^pi cos(a x) sin(l x) dx.
double cos_sin(long a, long l) {
  if (a == l || (a + l) % 2 == 0) return 0.0;
  return 2.0 * static_cast<double>(l) / static_cast<double>(l * l - a * a);
}

// int_0^pi cos(a x) cos(b x) dx for a, b >= 0.
double cos_cos(long a, long b) {
  if (a != b) return 0.0;
  return a == 0 ? pi : 0.5 * pi;
}

// int_0^pi x sin(c x) dx.
double x_sin(long c) { return c == 0 ? 0.0 : -pi * parity(c) / static_cast<double>(c); }

// int_0^pi x cos(c x) dx.
double x_cos(long c) {
  if (c == 0) return 0.5 * pi * pi;
  return (parity(c) - 1.0) / static_cast<double>(c * c);
}

// int_0^pi x^2 cos(c x) dx.
double x2_cos(long c) {
  if (c == 0) return pi * pi * pi / 3.0;
  return 2.0 * pi * parity(c) / static_cast<double>(c * c);
}

// (2/pi) int_0^pi cos(a x) sin(j x) dx.
double sine_of_cos(long a, long j) { return (2.0 / pi) * cos_sin(a, j); }

// M x (n+1) table of cos(k * 2 pi i / M), reduced mod M for accuracy.
Eigen::MatrixXd cos_table(int M, int n) {
  Eigen::MatrixXd c(M, n + 1);
  for (int i = 0; i < M; ++i)
    for (int k = 0; k <= n; ++k)
      c(i, k) = std::cos(2.0 * pi * static_cast<double>((static_cast<long>(k) * i) % M) / M);
  return c;
}

// M x n table of sin(k * 2 pi i / M), k = 1..n.
Eigen::MatrixXd sin_table(int M, int n) {
  Eigen::MatrixXd s(M, n);
  for (int i = 0; i < M; ++i)
    for (int k = 1; k <= n; ++k)
      s(i, k - 1) = std::sin(2.0 * pi * static_cast<double>((static_cast<long>(k) * i) % M) / M);
  return s;
}

Eigen::MatrixXd values_on_grid(const FourierSeries2D& u, int M) {
  return cos_table(M, u.L()) * u.coefficients() * sin_table(M, u.J()).transpose();
}

}  // namespace

double FourierSeries2D::value(double t, double x) const {
  double s = 0.0;
  for (int l = 0; l <= L(); ++l) {
    const double ct = std::cos(l * t);
    for (int j = 1; j <= J(); ++j) s += c_(l, j - 1) * ct * std::sin(j * x);
  }
  return s;
}

FourierSeries2D FourierSeries2D::from_eta(const FourierSeries1D& eta, int n) {
  if (n < 1) throw DomainError("from_eta: n must be positive");
  const int N = eta.order();
  FourierSeries2D u(n * N, n * N);
  for (int k = 1; k <= N; ++k) u(n * k, n * k) = 2.0 * eta[k];
  return u;
}

FourierSeries1D FourierSeries2D::eta_of_diagonal(int n) const {
  const int N = std::min(L(), J()) / n;
  FourierSeries1D eta(N);
  for (int k = 1; k <= N; ++k) eta[k] = 0.5 * (*this)(n * k, n * k);
  return eta;
}

FourierSeries2D FourierSeries2D::dilated(int n) const {
  if (n < 1) throw DomainError("dilated: n must be positive");
  FourierSeries2D out(n * L(), n * J());
  for (int l = 0; l <= L(); ++l)
    for (int j = 1; j <= J(); ++j) out(n * l, n * j) = (*this)(l, j);
  return out;
}

FourierSeries2D FourierSeries2D::resized(int L2, int J2) const {
  FourierSeries2D out(L2, J2);
  const int lr = std::min(L(), L2) + 1;
  const int jr = std::min(J(), J2);
  if (lr > 0 && jr > 0) out.c_.topLeftCorner(lr, jr) = c_.topLeftCorner(lr, jr);
  return out;
}

double FourierSeries2D::l2_squared() const { return inner(*this); }

double FourierSeries2D::h1_squared() const {
  double s = 0.0;
  for (int l = 0; l <= L(); ++l)
    for (int j = 1; j <= J(); ++j) {
      const double c = c_(l, j - 1);
      s += t_norm(l) * 0.5 * pi * static_cast<double>(l * l + j * j) * c * c;
    }
  return s;
}

double FourierSeries2D::inner(const FourierSeries2D& o) const {
  const int lr = std::min(L(), o.L());
  const int jr = std::min(J(), o.J());
  double s = 0.0;
  for (int l = 0; l <= lr; ++l)
    for (int j = 1; j <= jr; ++j) s += t_norm(l) * 0.5 * pi * c_(l, j - 1) * o(l, j);
  return s;
}

FourierSeries2D& FourierSeries2D::operator+=(const FourierSeries2D& o) {
  if (o.L() > L() || o.J() > J()) *this = resized(std::max(L(), o.L()), std::max(J(), o.J()));
  c_.topLeftCorner(o.L() + 1, o.J()) += o.c_;
  return *this;
}

FourierSeries2D& FourierSeries2D::operator-=(const FourierSeries2D& o) {
  if (o.L() > L() || o.J() > J()) *this = resized(std::max(L(), o.L()), std::max(J(), o.J()));
  c_.topLeftCorner(o.L() + 1, o.J()) -= o.c_;
  return *this;
}

FourierSeries2D& FourierSeries2D::operator*=(double s) {
  c_ *= s;
  return *this;
}

FourierSeries2D operator+(FourierSeries2D a, const FourierSeries2D& b) { return a += b; }
FourierSeries2D operator-(FourierSeries2D a, const FourierSeries2D& b) { return a -= b; }
FourierSeries2D operator*(double s, FourierSeries2D a) { return a *= s; }

FourierSeries2D project_V(const FourierSeries2D& u) {
  FourierSeries2D out(u.L(), u.J());
  for (int l = 1; l <= std::min(u.L(), u.J()); ++l) out(l, l) = u(l, l);
  return out;
}

FourierSeries2D project_W(const FourierSeries2D& u) {
  FourierSeries2D out = u;
  for (int l = 1; l <= std::min(u.L(), u.J()); ++l) out(l, l) = 0.0;
  return out;
}

FourierSeries2D box_apply(const FourierSeries2D& u) {
  FourierSeries2D out = u;
  for (int l = 0; l <= u.L(); ++l)
    for (int j = 1; j <= u.J(); ++j) out(l, j) *= static_cast<double>(j * j - l * l);
  return out;
}

FourierSeries2D box_inverse(const FourierSeries2D& u, double diagonal_tol) {
  FourierSeries2D out(u.L(), u.J());
  for (int l = 0; l <= u.L(); ++l)
    for (int j = 1; j <= u.J(); ++j) {
      if (l == j) {
        if (std::abs(u(l, j)) > diagonal_tol) {
          std::ostringstream os;
          os << "box_inverse: input has a V component " << u(l, j) << " at l = j = " << l;
          throw DomainError(os.str());
        }
        continue;
      }
      out(l, j) = u(l, j) / static_cast<double>(j * j - l * l);
    }
  return out;
}

double CosCosPolynomial::value(double t, double x) const {
  double s = 0.0;
  for (int i = 0; i < d.rows(); ++i) {
    const double ct = std::cos(stride * i * t);
    for (int k = 0; k < d.cols(); ++k) s += d(i, k) * ct * std::cos(stride * k * x);
  }
  return s;
}

CosCosPolynomial CosCosPolynomial::dilated(int n) const {
  if (n < 1) throw DomainError("dilated: n must be positive");
  return {stride * n, d};
}

FourierSeries2D CosCosPolynomial::sine_projection(int L, int J) const {
  FourierSeries2D out(L, J);
  for (int i = 0; i < d.rows() && stride * i <= L; ++i)
    for (int k = 0; k < d.cols(); ++k) {
      const double c = d(i, k);
      if (c == 0.0) continue;
      const long a = static_cast<long>(stride) * k;
      for (int j = 1; j <= J; ++j) out(stride * i, j) += c * sine_of_cos(a, j);
    }
  return out;
}

double CosCosPolynomial::integral() const {
  return d.size() ? 2.0 * pi * pi * d(0, 0) : 0.0;
}

double CosCosPolynomial::integral_weighted(const std::vector<double>& a_cos) const {
  if (d.size() == 0) return 0.0;
  double s = 0.0;
  for (int k = 0; k < d.cols(); ++k) {
    const long a = static_cast<long>(stride) * k;
    if (a < static_cast<long>(a_cos.size())) s += d(0, k) * a_cos[a] * cos_cos(a, a);
  }
  return 2.0 * pi * s;
}

int product_grid(int degree) {
  int m = 16;
  while (m <= 2 * degree) m *= 2;
  return m;
}

CosCosPolynomial multiply(const FourierSeries2D& a, const FourierSeries2D& b) {
  struct Term {
    int l, j;
    double c;
  };
  auto nonzero = [](const FourierSeries2D& u) {
    std::vector<Term> out;
    for (int l = 0; l <= u.L(); ++l)
      for (int j = 1; j <= u.J(); ++j)
        if (u(l, j) != 0.0) out.push_back({l, j, u(l, j)});
    return out;
  };
  const auto ta = nonzero(a);
  const auto tb = nonzero(b);
  CosCosPolynomial out;
  out.d = Eigen::MatrixXd::Zero(a.L() + b.L() + 1, a.J() + b.J() + 1);
  for (const Term& x : ta)
    for (const Term& y : tb) {
      const double c = 0.25 * x.c * y.c;
      // cos cos in t gives two cosines; sin sin in x gives cos(diff) - cos(sum).
      const int ts = x.l + y.l;
      const int td = std::abs(x.l - y.l);
      const int xs = x.j + y.j;
      const int xd = std::abs(x.j - y.j);
      out.d(ts, xd) += c;
      out.d(td, xd) += c;
      out.d(ts, xs) -= c;
      out.d(td, xs) -= c;
    }
  return out;
}

CosCosPolynomial power_even(const FourierSeries2D& u, int p) {
  if (p < 2 || p % 2 != 0) throw DomainError("power_even: p must be even and >= 2");
  const int lt = p * u.L();
  const int jx = p * u.J();
  const int M = product_grid(std::max(lt, jx));
  const Eigen::MatrixXd f = values_on_grid(u, M).array().pow(p).matrix();
  CosCosPolynomial out;
  out.d = cos_table(M, lt).transpose() * f * cos_table(M, jx);
  out.d /= static_cast<double>(M) * M;
  out.d.rightCols(jx).array() *= 2.0;
  out.d.bottomRows(lt).array() *= 2.0;
  return out;
}

FourierSeries2D power_odd(const FourierSeries2D& u, int p) {
  if (p < 1 || p % 2 != 1) throw DomainError("power_odd: p must be odd and >= 1");
  const int lt = p * u.L();
  const int jx = p * u.J();
  const int M = product_grid(std::max(lt, jx));
  const Eigen::MatrixXd f = values_on_grid(u, M).array().pow(p).matrix();
  FourierSeries2D out(lt, jx);
  out.coefficients() = cos_table(M, lt).transpose() * f * sin_table(M, jx);
  out.coefficients() *= 2.0 / (static_cast<double>(M) * M);
  out.coefficients().bottomRows(lt).array() *= 2.0;
  return out;
}

ExactBoxInverse::ExactBoxInverse(const CosCosPolynomial& f) : stride_(f.stride) {
  const long s = f.stride;
  for (int i = 0; i < f.d.rows(); ++i) {
    if (f.d.row(i).cwiseAbs().maxCoeff() == 0.0) continue;
    Mode md;
    md.l = static_cast<int>(s * i);
    const long l = md.l;
    const int ncos = std::max<int>(static_cast<int>(f.d.cols()), i + 1);
    md.cos_coef.assign(static_cast<size_t>(ncos), 0.0);
    if (l == 0) {
      double alpha = 0.0;
      double at_pi = 0.0;
      for (int k = 1; k < f.d.cols(); ++k) {
        const long a = s * k;
        const double c = f.d(0, k) / static_cast<double>(a * a);
        md.cos_coef[k] = c;
        alpha -= c;
        at_pi += c * parity(a);
      }
      md.x2 = -0.5 * f.d(0, 0);
      md.cos_coef[0] = alpha;
      md.x1 = -(at_pi + alpha + md.x2 * pi * pi) / pi;
    } else {
      double sigma = 0.0;
      double alpha = 0.0;
      double against_sin = 0.0;
      for (int k = 0; k < f.d.cols(); ++k) {
        const double dk = f.d(i, k);
        if (dk == 0.0) continue;
        const long a = s * k;
        if (a == l) {
          md.x_sin_l = -dk / (2.0 * static_cast<double>(l));
          continue;
        }
        sigma += dk * sine_of_cos(a, l);
        const double c = dk / static_cast<double>(a * a - l * l);
        md.cos_coef[k] = c;
        alpha -= c;
        against_sin += c * cos_sin(a, l);
      }
      md.x_cos_l = -sigma / (2.0 * static_cast<double>(l));
      md.cos_coef[i] += alpha;
      // int_0^pi x sin^2(lx) = pi^2/4, int_0^pi x sin(lx) cos(lx) = -pi/(4l).
      md.sin_l = -(2.0 / pi) * (against_sin + md.x_sin_l * pi * pi / 4.0 -
                                md.x_cos_l * pi / (4.0 * static_cast<double>(l)));
    }
    modes_.push_back(std::move(md));
  }
}

double ExactBoxInverse::pair(const CosCosPolynomial& g) const {
  const long sg = g.stride;
  double total = 0.0;
  for (const Mode& md : modes_) {
    const long l = md.l;
    if (l % sg != 0 || l / sg >= g.d.rows()) continue;
    const int row = static_cast<int>(l / sg);
    double s = 0.0;
    for (int k = 0; k < g.d.cols(); ++k) {
      const double e = g.d(row, k);
      if (e == 0.0) continue;
      const long b = sg * k;
      double w = 0.0;
      if (b % stride_ == 0 && b / stride_ < static_cast<long>(md.cos_coef.size()))
        w += md.cos_coef[static_cast<size_t>(b / stride_)] * cos_cos(b, b);
      w += md.sin_l * cos_sin(b, l);
      w += md.x_sin_l * 0.5 * (x_sin(l + b) + x_sin(l - b));
      w += md.x_cos_l * 0.5 * (x_cos(l + b) + x_cos(l - b));
      w += md.x1 * x_cos(b) + md.x2 * x2_cos(b);
      s += e * w;
    }
    total += t_norm(static_cast<int>(l)) * s;
  }
  return total;
}

double ExactBoxInverse::mode_value(int l, double x) const {
  for (const Mode& md : modes_) {
    if (md.l != l) continue;
    double w = 0.0;
    for (size_t k = 0; k < md.cos_coef.size(); ++k)
      w += md.cos_coef[k] * std::cos(static_cast<double>(stride_ * static_cast<long>(k)) * x);
    w += md.sin_l * std::sin(l * x) + md.x_sin_l * x * std::sin(l * x) +
         md.x_cos_l * x * std::cos(l * x) + md.x1 * x + md.x2 * x * x;
    return w;
  }
  return 0.0;
}

double ExactBoxInverse::mode_second_derivative(int l, double x) const {
  for (const Mode& md : modes_) {
    if (md.l != l) continue;
    const double dl = l;
    double w = 0.0;
    for (size_t k = 0; k < md.cos_coef.size(); ++k) {
      const double a = static_cast<double>(stride_ * static_cast<long>(k));
      w -= a * a * md.cos_coef[k] * std::cos(a * x);
    }
    w -= dl * dl * md.sin_l * std::sin(dl * x);
    w += md.x_sin_l * (2.0 * dl * std::cos(dl * x) - dl * dl * x * std::sin(dl * x));
    w += md.x_cos_l * (-2.0 * dl * std::sin(dl * x) - dl * dl * x * std::cos(dl * x));
    w += 2.0 * md.x2;
    return w;
  }
  return 0.0;
}

double ExactBoxInverse::value(double t, double x) const {
  double s = 0.0;
  for (const Mode& md : modes_) s += std::cos(md.l * t) * mode_value(md.l, x);
  return s;
}

Eigen::MatrixXd sample(const FourierSeries2D& u, int nt, int nx) {
  if (nt < 1 || nx < 2) throw DomainError("sample: grid too small");
  Eigen::MatrixXd ct(nt, u.L() + 1);
  for (int i = 0; i < nt; ++i)
    for (int l = 0; l <= u.L(); ++l) ct(i, l) = std::cos(2.0 * pi * i * l / nt);
  Eigen::MatrixXd sx(nx, u.J());
  for (int k = 0; k < nx; ++k)
    for (int j = 1; j <= u.J(); ++j) sx(k, j - 1) = std::sin(pi * k * j / (nx - 1));
  return ct * u.coefficients() * sx.transpose();
}

}  // namespace frwave::field2d
