#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ahls/hls_body.hpp"
#include "ahls/quadrature.hpp"
#include "ahls/report.hpp"
#include "ahls/sphere.hpp"
#include "ahls/test_function.hpp"

namespace ahls {

struct SharpConstant {
  int n = 0;
  double alpha = 0.0;
  double value = 0.0;
};

// pi^{(n-alpha)/2} Gamma(alpha/2) / Gamma((n+alpha)/2) (Gamma(n) / Gamma(n/2))^{alpha/n}
SharpConstant gamma_constant(int n, double alpha);

// Direction grid used by the checks: spec.sphere_resolution for n <= 2,
// an eighth of it for n = 3 and 4 points per axis for n >= 4.
SphereGrid verification_grid(int n, const QuadratureSpec& spec);

// gamma ||f||^2_{2n/(n+alpha)} >= n omega_n^{(n-alpha)/n} vol(H_alpha f)^{alpha/n}
//   >= int int f(x) f(y) |x - y|^{alpha-n},  0 < alpha < n.
InequalityReport verify_ahls_low(const TestFunction& f, double alpha, const QuadratureSpec& spec);
// The same chain reversed, alpha > n.
InequalityReport verify_ahls_high(const TestFunction& f, double alpha, const QuadratureSpec& spec);

enum class ReverseVariant { Hls, Polar };

// Reverse chains for log-concave f. Hls: Gamma(n+1)^{alpha/n} / Gamma(alpha)
// vol(H_alpha f)^{alpha/n} >= |f|_2^{2-2alpha/n} |f|_1^{2alpha/n} >= |f|^2_{2n/(n+alpha)},
// reversed for alpha > n. Polar (0 < alpha < 1/2): alpha / (Gamma(n+1)^{2alpha/n}
// Gamma(1-2alpha)) vol(Pi)^{-2alpha/n} <= |f|_2^{2+4alpha/n} |f|_1^{-4alpha/n} <= |f|^2_{2n/(n-2alpha)}.
InequalityReport verify_reverse_logconcave(const TestFunction& f, double alpha, const QuadratureSpec& spec,
                                           ReverseVariant variant = ReverseVariant::Hls,
                                           const HlsOptions& options = {});

// Normalizer c(alpha) of the inclusion chain for concavity class s
// (0, positive, or infinity for indicators).
double inclusion_normalizer(int n, double s, double alpha);

// rho_{R_alpha f}(xi) / c(alpha) non-increasing in alpha on every direction.
InequalityReport verify_inclusion(const TestFunction& f, std::span<const double> alphas, double s,
                                  const QuadratureSpec& spec, std::optional<std::vector<Vec>> directions = std::nullopt);

// H-body chain (0 < alpha < n, reversed for alpha > n) and, for
// 0 < alpha < 1/2, the polar chain. s defaults to the family's class.
std::vector<InequalityReport> verify_sconcave_corollaries(const TestFunction& f, double alpha,
                                                          const QuadratureSpec& spec,
                                                          std::optional<double> s = std::nullopt);

// vol(H_alpha f) <= vol(H_alpha f*) for alpha < n, >= for alpha > n.
InequalityReport verify_rearrangement_monotonicity(const TestFunction& f, double alpha, const QuadratureSpec& spec);

// gamma_constant against an expected value.
InequalityReport check_gamma_constant(int n, double alpha, std::optional<double> expected, double rel_tol = 1e-12);

enum class VolumeIdentity { H, R };
// vol(H_n f) = |f|_1^2 / n, or vol(R_n f) = |f|_1^2 / |f|_2^2.
InequalityReport check_volume_identity(const TestFunction& f, VolumeIdentity which, const QuadratureSpec& spec,
                                       double rel_tol = 1e-3);

// Autocorrelation engine against the Monte Carlo estimator at given shifts.
InequalityReport check_autocorrelation_mc(const TestFunction& f, std::span<const Vec> shifts,
                                          const QuadratureSpec& spec, double rel_tol = 2e-2);

// Continuation identities int t^{a-1}(e^{-t} - 1) = Gamma(a) and
// int t^{a-1}((1-t)_+^{1/s} - 1) = B(a, 1 + 1/s) for -1 < a < 0 (plain
// moments for a > 0), and invariance under the split point.
InequalityReport check_continuation(std::span<const double> alphas, std::span<const double> s_values,
                                    const QuadratureSpec& spec);

// vol(H_alpha f) = vol(H_alpha g) for g = f composed with a volume-preserving map.
InequalityReport check_affine_invariance(const TestFunction& f, const TestFunction& g, double alpha,
                                         const QuadratureSpec& spec, double rel_tol = 1e-3);

// H_alpha f passes the convexity test.
InequalityReport check_convexity(const TestFunction& f, double alpha, const QuadratureSpec& spec);

// zeta profile of f along xi with omega = e^{-t} and phi = -log(Gf(t xi) / Gf(0));
// decreasing in alpha, constant (equality) when flagged.
InequalityReport check_zeta(const TestFunction& f, const Vec& xi, std::span<const double> alphas,
                            const QuadratureSpec& spec);

}  // namespace ahls
