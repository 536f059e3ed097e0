#include "ahls/special.hpp"

#include <numbers>

namespace ahls {

namespace {

// Sign of Gamma(x); negative on (-2k-1, -2k) for k >= 0.
double gamma_sign(double x) {
  if (x > 0.0) return 1.0;
  const double fl = std::floor(x);
  return (static_cast<long long>(fl) % 2 == 0) ? 1.0 : -1.0;
}

}  // namespace

double beta_fn(double a, double b) {
  const double sign = gamma_sign(a) * gamma_sign(b) * gamma_sign(a + b);
  return sign * std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

double digamma(double x) {
  double result = 0.0;
  while (x < 12.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // Asymptotic expansion in Bernoulli numbers.
  const double series =
      inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 * (1.0 / 240 - inv2 * (1.0 / 132)))));
  return result + std::log(x) - 0.5 * inv - series;
}

double sphere_area(int n) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

double ball_volume(int n) {
  if (n == 0) return 1.0;
  return sphere_area(n) / n;
}

double factorial(int k) { return std::tgamma(k + 1.0); }

}  // namespace ahls
