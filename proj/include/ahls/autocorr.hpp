#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ahls/linalg.hpp"
#include "ahls/monte_carlo.hpp"
#include "ahls/quadrature.hpp"
#include "ahls/test_function.hpp"

namespace ahls {

enum class DecayKind { Exponential, Polynomial, Compact };

// The trace t -> Gf(t xi) along a ray.
struct AutocorrProfile {
  Vec xi;
  double g0 = 0.0;  // ||f||_2^2
  DecayKind decay = DecayKind::Compact;
  double decay_value = 0.0;  // rate, polynomial order, or support radius
  std::function<double(double)> g;
  std::function<double(double)> deficit;  // g0 - g(t) without cancellation
  std::vector<double> breakpoints;
  bool deterministic = true;  // false when g carries sampling noise
  bool pure_exponential = false;  // g(t) = g0 exp(-decay_value t) exactly
  std::string path;           // numeric path used

  double operator()(double t) const { return g(t); }
  std::optional<double> support() const {
    if (decay == DecayKind::Compact) return decay_value;
    return std::nullopt;
  }
};

AutocorrProfile autocorr_profile(const TestFunction& f, const Vec& xi, const QuadratureSpec& spec);

// Gf(y) = int f(x) f(x + y) dx
double autocorrelation(const TestFunction& f, const Vec& y, const QuadratureSpec& spec);

// Sample estimate ||f||_1 E[f(X + y)], X ~ f / ||f||_1.
McEstimate autocorrelation_mc(const TestFunction& f, const Vec& y, const QuadratureSpec& spec);

// int |f(x + y) - f(x)|^2 dx = 2 (Gf(0) - Gf(y))
double l2_difference(const TestFunction& f, const Vec& y, const QuadratureSpec& spec);

// Direct sample estimate of the L2 difference (mixture importance sampling).
McEstimate l2_difference_mc(const TestFunction& f, const Vec& y, const QuadratureSpec& spec);

// Autocorrelation of h(|x|) at distance r, and its deficit G(0) - G(r).
double isotropic_autocorr(const Profile& h, int n, double r, const QuadratureSpec& spec);
double isotropic_autocorr_deficit(const Profile& h, int n, double r, const QuadratureSpec& spec);

}  // namespace ahls
