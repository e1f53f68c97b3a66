#include "frwave/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <unsupported/Eigen/FFT>

#include "frwave/error.hpp"

namespace frwave::spectral {

namespace {

using cplx = std::complex<double>;

std::vector<cplx> forward(std::span<const double> f) {
  Eigen::FFT<double> fft;
  std::vector<double> in(f.begin(), f.end());
  std::vector<cplx> out;
  fft.fwd(out, in);
  return out;
}

std::vector<double> inverse(const std::vector<cplx>& spec) {
  Eigen::FFT<double> fft;
  std::vector<cplx> out;
  fft.inv(out, spec);
  std::vector<double> re(out.size());
  std::transform(out.begin(), out.end(), re.begin(), [](cplx c) { return c.real(); });
  return re;
}

// Signed wavenumber of bin k.
int wavenumber(int k, int n) { return k <= n / 2 ? k : k - n; }

}  // namespace

std::vector<double> grid(int n) {
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = 2.0 * std::numbers::pi * i / n;
  return t;
}

double mean(std::span<const double> f) {
  double s = 0.0;
  for (double v : f) s += v;
  return s / static_cast<double>(f.size());
}

std::vector<double> derivative(std::span<const double> f, int order) {
  const int n = static_cast<int>(f.size());
  if (n < 4 || n % 2 != 0) throw DomainError("spectral::derivative: need an even grid size >= 4");
  auto spec = forward(f);
  for (int k = 0; k < n; ++k) {
    const int w = wavenumber(k, n);
    if (order % 2 == 1 && 2 * std::abs(w) == n) {
      spec[k] = 0.0;
      continue;
    }
    spec[k] *= std::pow(cplx(0.0, static_cast<double>(w)), order);
  }
  return inverse(spec);
}

std::vector<double> periodic_antiderivative(std::span<const double> f) {
  const int n = static_cast<int>(f.size());
  if (n < 4 || n % 2 != 0) throw DomainError("spectral::periodic_antiderivative: need an even grid size >= 4");
  auto spec = forward(f);
  spec[0] = 0.0;
  for (int k = 1; k < n; ++k) {
    const int w = wavenumber(k, n);
    if (2 * std::abs(w) == n) {
      spec[k] = 0.0;
      continue;
    }
    spec[k] /= cplx(0.0, static_cast<double>(w));
  }
  auto F = inverse(spec);
  const double f0 = F[0];
  for (double& v : F) v -= f0;
  return F;
}

std::vector<double> cumulative_integral(std::span<const double> f) {
  const double avg = mean(f);
  auto F = periodic_antiderivative(f);
  const int n = static_cast<int>(f.size());
  for (int i = 0; i < n; ++i) F[i] += avg * 2.0 * std::numbers::pi * i / n;
  return F;
}

double sup_norm(std::span<const double> f) {
  double s = 0.0;
  for (double v : f) s = std::max(s, std::abs(v));
  return s;
}

}  // namespace frwave::spectral
