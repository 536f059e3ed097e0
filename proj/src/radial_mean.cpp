#include "ahls/radial_mean.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ahls/chord.hpp"
#include "ahls/error.hpp"
#include "ahls/parallel.hpp"

namespace ahls {

HlsBodyResult radial_mean_body(const StarBody& E, double alpha, const SphereGrid& grid, const QuadratureSpec& spec) {
  require(std::isfinite(alpha) && alpha > -1.0, "R_alpha E needs alpha > -1");
  require(grid.dim == E.dim(), "sphere grid dimension does not match body");
  require(E.known_convex(), "radial mean bodies need a convex body");
  const double V = volume(E, spec);
  if (!(V > spec.abs_tol)) throw Error(ErrorKind::DegenerateBody, "body has (near) zero volume");

  const std::size_t m = grid.size();
  std::vector<double> radii(m);
  std::vector<DirectionDiagnostic> diags(m);
  parallel_for(m, [&](std::size_t i) {
    const Vec& xi = grid.directions[i];
    if (alpha == 0.0) {
      const IntegrationResult r =
          shadow_integral(E, xi, [](double c) { return c > 0.0 ? c * std::log(c) - c : 0.0; }, spec);
      radii[i] = std::exp(r.value / V);
      diags[i].rel_error = r.error / V;
    } else {
      const IntegrationResult r = shadow_integral(E, xi, [alpha](double c) { return std::pow(c, alpha + 1.0); }, spec);
      radii[i] = std::pow(r.value / ((alpha + 1.0) * V), 1.0 / alpha);
      diags[i].rel_error = r.value > 0.0 ? r.error / r.value / std::abs(alpha) : 0.0;
    }
    if (E.dim() >= 4) {
      diags[i].converged = false;
      diags[i].note = "Monte Carlo shadow";
    }
  });
  std::ostringstream os;
  os << "R(alpha=" << format_double(alpha) << ", " << E.name() << ")";
  return {StarBody::sampled(grid, radii, os.str()), alpha, std::move(diags), "chord integration"};
}

InequalityReport bridge_check(const StarBody& E, double alpha, const SphereGrid& grid, const QuadratureSpec& spec,
                              double threshold) {
  require(alpha > -1.0 && alpha != 0.0, "bridge identities need alpha in (-1, 0) or alpha > 0");
  InequalityReport rep;
  rep.check = "bridge_identity";
  rep.params = {{"n", E.dim()}, {"alpha", alpha}, {"body", E.name()}, {"directions", grid.size()}};
  const double V = volume(E, spec);
  const HlsBodyResult R = radial_mean_body(E, alpha, grid, spec);
  const TestFunction chi = TestFunction::indicator(E);
  const HlsBodyResult other =
      alpha > 0.0 ? hls_body(chi, alpha, grid, spec) : polar_projection_body(chi, -0.5 * alpha, grid, spec);
  const double factor = alpha > 0.0 ? std::pow(V / alpha, 1.0 / alpha) : std::pow(2.0 * V / (-alpha), 1.0 / alpha);
  rep.notes.push_back(alpha > 0.0 ? "H_alpha chi_E against (vol E / alpha)^{1/alpha} R_alpha E"
                                  : "Pi*_{-alpha/2} chi_E against (2 vol E / -alpha)^{1/alpha} R_alpha E");
  double worst = 0.0;
  std::size_t worst_i = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double a = other.body.radii()[i];
    const double b = factor * R.body.radii()[i];
    const double d = std::abs(a - b) / std::max(std::abs(b), 1e-300);
    if (!(d <= worst)) {
      worst = d;
      worst_i = i;
    }
  }
  classify_discrepancy(rep, worst, threshold);
  rep.middle = other.body.radii()[worst_i];
  rep.right = factor * R.body.radii()[worst_i];
  rep.notes.push_back("left is the largest relative radial discrepancy; middle and right are the two radii there");
  return rep;
}

}  // namespace ahls
