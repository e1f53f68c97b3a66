#pragma once

// Fourier tools for samples of 2*pi-periodic functions on the uniform grid
// t_i = 2*pi*i/n, i = 0..n-1.

#include <span>
#include <vector>

namespace frwave::spectral {

std::vector<double> grid(int n);

double mean(std::span<const double> f);

/// Spectral derivative of the given order (Nyquist mode dropped for odd orders).
std::vector<double> derivative(std::span<const double> f, int order = 1);

/// F with F' = f - <f> and F(0) = 0, so int_0^t f = <f> t + F(t).
std::vector<double> periodic_antiderivative(std::span<const double> f);

/// Cumulative integral int_0^{t_i} f, i.e. <f> t_i + F(t_i).
std::vector<double> cumulative_integral(std::span<const double> f);

/// Sup norm.
double sup_norm(std::span<const double> f);

}  // namespace frwave::spectral
