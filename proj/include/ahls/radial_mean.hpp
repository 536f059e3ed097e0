#pragma once

#include "ahls/hls_body.hpp"
#include "ahls/quadrature.hpp"
#include "ahls/report.hpp"
#include "ahls/sphere.hpp"
#include "ahls/star_body.hpp"

namespace ahls {

// Radial alpha-mean body of a convex body from chord lengths:
//   rho^alpha = int_{E|xi^perp} c^{alpha+1} / ((alpha + 1) vol E), alpha != 0,
//   log rho   = int_{E|xi^perp} (c log c - c) / vol E,               alpha = 0.
HlsBodyResult radial_mean_body(const StarBody& E, double alpha, const SphereGrid& grid, const QuadratureSpec& spec);

// Direction-wise comparison of H_alpha chi_E with (vol E / alpha)^{1/alpha} R_alpha E
// for alpha > 0, and of Pi*_{-alpha/2} chi_E with (2 vol E / -alpha)^{1/alpha} R_alpha E
// for -1 < alpha < 0. Reports the largest relative radial discrepancy.
InequalityReport bridge_check(const StarBody& E, double alpha, const SphereGrid& grid, const QuadratureSpec& spec,
                              double threshold = 1e-3);

}  // namespace ahls
