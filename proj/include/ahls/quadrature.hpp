#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace ahls {

// Integration budgets shared by every numerical path. Two runs with the same
// spec and inputs are bit-identical: all reductions happen in a fixed order.
struct QuadratureSpec {
  int radial_nodes = 20;          // Gauss-Legendre order per panel
  double tail_cut = 1e8;          // integrands must have decayed by this point
  int sphere_resolution = 128;
  std::int64_t mc_samples = 1'000'000;
  std::uint64_t seed = 20240601;
  double rel_tol = 1e-6;
  double abs_tol = 1e-12;
  int max_panels = 4000;

  void validate() const;
};

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Cached Gauss-Legendre rule of the given order (thread-safe).
const GaussRule& gauss_legendre(int order);

struct IntegrationResult {
  double value = 0.0;
  double error = 0.0;
  int panels = 0;
  bool converged = false;
};

using ScalarFn = std::function<double(double)>;

// Global adaptive Gauss-Legendre on [a, b]. Interior breakpoints seed the
// initial partition. Throws NonConvergent when the panel budget runs out,
// NonFinite when the integrand produces NaN or infinity.
IntegrationResult integrate_adaptive(const ScalarFn& f, double a, double b, const QuadratureSpec& spec,
                                     std::span<const double> breakpoints = {});

// Same refinement, but returns the final node/weight pairs so that further
// integrands over the same domain can reuse the partition.
std::vector<std::pair<double, double>> adaptive_rule(const ScalarFn& driver, double a, double b,
                                                     const QuadratureSpec& spec,
                                                     std::span<const double> breakpoints = {});

// Integral over [a, inf) through t = a + u / (1 - u).
IntegrationResult integrate_halfline(const ScalarFn& f, double a, const QuadratureSpec& spec,
                                     std::span<const double> breakpoints = {});

struct PowerWeightOptions {
  std::optional<double> g0;            // g(0); required for -1 < alpha < 0
  double split = 1.0;                  // t0 in the continuation identity
  std::optional<double> support_end;   // g vanishes beyond this point
  std::vector<double> breakpoints;     // kinks of g
  ScalarFn deficit;                    // optional accurate t -> g0 - g(t)
};

// Mellin-type moment of a half-line function:
//   alpha > 0:       int_0^inf t^{alpha-1} g(t) dt
//   -1 < alpha < 0:  int_0^inf t^{alpha-1} (g(t) - g0) dt
// Both are evaluated through the split identity
//   int_{t0}^inf t^{a-1} g - int_0^{t0} t^{a-1} (g0 - g) + g0 t0^a / a
// whenever g0 is known, and by a singularity-removing substitution on
// [0, t0] otherwise.
IntegrationResult integrate_powerweight_detail(const ScalarFn& g, double alpha, const PowerWeightOptions& options,
                                               const QuadratureSpec& spec);

double integrate_powerweight(const ScalarFn& g, double alpha, std::optional<double> g0, const QuadratureSpec& spec);

}  // namespace ahls
