#pragma once

#include <cmath>
#include <numbers>

namespace ahls {

inline constexpr double kEulerGamma = std::numbers::egamma;

// Gamma(x) for any real x that is not a non-positive integer (sign preserved).
inline double gamma_fn(double x) { return std::tgamma(x); }

inline double log_gamma_abs(double x) { return std::lgamma(x); }

// Beta(a, b) via log-gamma, valid through the analytic continuation to
// negative non-integer arguments; the sign comes from the Gamma factors.
double beta_fn(double a, double b);

// Digamma psi(x) for x > 0.
double digamma(double x);

// Surface measure of the unit sphere S^{n-1} in R^n.
double sphere_area(int n);

// Volume omega_n of the unit ball in R^n.
double ball_volume(int n);

double factorial(int k);

}  // namespace ahls
