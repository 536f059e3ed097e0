#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ahls/autocorr.hpp"
#include "ahls/monte_carlo.hpp"
#include "ahls/quadrature.hpp"
#include "ahls/sphere.hpp"
#include "ahls/star_body.hpp"
#include "ahls/test_function.hpp"

namespace ahls {

struct DirectionDiagnostic {
  bool converged = true;
  bool divergent = false;  // radius recorded as +inf
  double rel_error = 0.0;  // estimated relative error of the radius
  std::string note;
};

struct HlsBodyResult {
  StarBody body;
  double alpha = 0.0;
  std::vector<DirectionDiagnostic> diagnostics;
  std::string path;

  bool finite() const;
  double max_rel_error() const;
  std::size_t divergent_count() const;
};

struct HlsOptions {
  // Use exact Mellin transforms where the autocorrelation is a pure
  // exponential (simplex exponential family).
  bool closed_forms = true;
  // For ellipsoidal f, integrate along one direction and rescale by
  // |A^{-1} xi|.
  bool reduce_symmetry = true;
};

// rho(xi)^alpha = int_0^inf t^{alpha-1} Gf(t xi) dt, alpha > 0.
HlsBodyResult hls_body(const TestFunction& f, double alpha, const SphereGrid& grid, const QuadratureSpec& spec,
                       const HlsOptions& options = {});

// rho(xi)^{-2 alpha} = int_0^inf t^{-2 alpha - 1} |f(. + t xi) - f|_2^2 dt, 0 < alpha < 1.
HlsBodyResult polar_projection_body(const TestFunction& f, double alpha, const SphereGrid& grid,
                                    const QuadratureSpec& spec, const HlsOptions& options = {});

// R_alpha f for alpha > -1, including the logarithmic case alpha = 0.
HlsBodyResult radial_mean_function_body(const TestFunction& f, double alpha, const SphereGrid& grid,
                                        const QuadratureSpec& spec, const HlsOptions& options = {});

// n V~_alpha(K, H_alpha f) = int int f(x) f(y) ||x - y||_K^{alpha - n} dx dy.
double anisotropic_hls_functional(const TestFunction& f, const StarBody& K, double alpha, const SphereGrid& grid,
                                  const QuadratureSpec& spec);
double anisotropic_hls_functional(const HlsBodyResult& H, const StarBody& K, const QuadratureSpec& spec);

// Direct sample estimate of the double integral above.
McEstimate hls_double_integral_mc(const TestFunction& f, const StarBody& K, double alpha, const QuadratureSpec& spec);

struct ZetaProfile {
  std::vector<double> alphas;
  std::vector<double> values;
  std::string omega_label;
  std::string phi_label;

  // Largest increase values[i+1] - values[i] over the grid (<= 0 when
  // decreasing).
  double worst_increase() const;
};

// zeta(alpha) = (int t^{alpha-1} omega(phi(t)) dt / int t^{alpha-1} omega(t) dt)^{1/alpha},
// with the continuation ratio for -1 < alpha < 0 and the logarithmic limit at 0.
ZetaProfile zeta_profile(const std::function<double(double)>& omega, const std::function<double(double)>& phi,
                         std::span<const double> alphas, const QuadratureSpec& spec, std::string omega_label = "omega",
                         std::string phi_label = "phi");

}  // namespace ahls
