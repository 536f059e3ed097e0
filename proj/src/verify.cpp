#include "ahls/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ahls/autocorr.hpp"
#include "ahls/error.hpp"
#include "ahls/special.hpp"

namespace ahls {

namespace {

using json = nlohmann::ordered_json;

json function_params(const TestFunction& f, double alpha) {
  json p;
  p["n"] = f.dim();
  p["alpha"] = alpha;
  p["family"] = to_string(f.family());
  if (f.family() == TestFunction::Family::SConcaveSimplex) p["s"] = f.s();
  p["function"] = f.describe();
  return p;
}

// H_alpha f is a centred ball up to the linear map of an ellipsoidal gauge
// only when the gauge is a ball (or n = 1, where every body is symmetric).
bool isotropic_autocorrelation(const TestFunction& f) {
  return f.dim() == 1 || f.body().kind() == StarBody::Kind::Ball;
}

bool is_extremal_for(const TestFunction& f, double alpha) {
  return f.family() == TestFunction::Family::HlsExtremal && std::abs(f.alpha() - alpha) <= 1e-12 * (1.0 + alpha);
}

double sq(double x) { return x * x; }

std::string divergence_reason(const HlsBodyResult& H) {
  std::ostringstream os;
  os << H.divergent_count() << " of " << H.diagnostics.size() << " directions diverge";
  for (const auto& d : H.diagnostics)
    if (d.divergent) {
      os << ": " << d.note;
      break;
    }
  return os.str();
}

InequalityReport ahls_chain(const TestFunction& f, double alpha, const QuadratureSpec& spec, bool high) {
  const int n = f.dim();
  InequalityReport r;
  r.check = high ? "ahls_high" : "ahls_low";
  r.params = function_params(f, alpha);
  const HlsBodyResult H = hls_body(f, alpha, verification_grid(n, spec), spec);
  if (!H.finite()) {
    r.status = Status::Skipped;
    r.reason = divergence_reason(H);
    return r;
  }
  const double p = 2.0 * n / (n + alpha);
  r.left = gamma_constant(n, alpha).value * sq(lp_functional(f, p, spec));
  r.middle = n * std::pow(ball_volume(n), (n - alpha) / n) * std::pow(volume(H.body, spec), alpha / n);
  r.right = anisotropic_hls_functional(H, StarBody::ball(n), spec);
  classify_chain(r, high ? Chain::Leq : Chain::Geq, H.max_rel_error(), is_extremal_for(f, alpha),
                 isotropic_autocorrelation(f));
  r.notes.push_back("H_alpha f: " + H.path);
  return r;
}

SphereGrid scattered_grid(int n, const std::vector<Vec>& dirs) {
  SphereGrid g;
  g.dim = n;
  g.layout = n == 1 ? SphereGrid::Layout::TwoPoint : SphereGrid::Layout::Scattered;
  for (const Vec& d : dirs) {
    require(d.size() == n, "direction dimension does not match function");
    require(d.norm() > 0.0, "direction must be non-zero");
    g.directions.push_back(d / d.norm());
  }
  g.weights.assign(dirs.size(), sphere_area(n) / static_cast<double>(dirs.size()));
  return g;
}

// Per-direction monotonicity of rows[k][i] (k indexing sorted alphas).
struct MonotoneSummary {
  double worst_increase = -std::numeric_limits<double>::infinity();  // relative
  double spread = 0.0;                                              // relative
  std::size_t dir = 0;
};

MonotoneSummary monotone_summary(const std::vector<std::vector<double>>& rows) {
  MonotoneSummary s;
  if (rows.empty()) return s;
  const std::size_t m = rows[0].size();
  for (std::size_t i = 0; i < m; ++i) {
    double lo = rows[0][i], hi = rows[0][i];
    for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
      const double inc = (rows[k + 1][i] - rows[k][i]) / rows[k][i];
      if (inc > s.worst_increase) {
        s.worst_increase = inc;
        s.dir = i;
      }
      lo = std::min(lo, rows[k + 1][i]);
      hi = std::max(hi, rows[k + 1][i]);
    }
    s.spread = std::max(s.spread, (hi - lo) / lo);
  }
  return s;
}

void classify_monotone(InequalityReport& r, const MonotoneSummary& s, double est_rel_err, bool equality) {
  r.margin1 = -s.worst_increase;
  r.margin2 = -s.spread;
  r.tol = std::max(1e-6, 10.0 * est_rel_err);
  const double eq_tol = std::max(1e-3, 10.0 * est_rel_err);
  r.notes.push_back("margins: minus the largest relative increase in alpha, minus the largest relative spread");
  if (!std::isfinite(s.worst_increase) && s.worst_increase > 0) {
    r.status = Status::Violated;
    return;
  }
  if (equality) {
    r.tol = eq_tol;
    r.status = s.spread <= eq_tol ? Status::Equality : Status::Violated;
    if (r.status == Status::Violated) r.notes.push_back("expected constant normalized radii were not reproduced");
    return;
  }
  r.status = s.worst_increase <= r.tol ? Status::Holds : Status::Violated;
}

}  // namespace

SharpConstant gamma_constant(int n, double alpha) {
  require(n >= 1, "dimension must be positive");
  require(alpha > 0.0 && std::isfinite(alpha), "alpha must be positive");
  const double dn = n;
  const double log_value = 0.5 * (dn - alpha) * std::log(std::numbers::pi) + log_gamma_abs(0.5 * alpha) -
                           log_gamma_abs(0.5 * (dn + alpha)) +
                           alpha / dn * (log_gamma_abs(dn) - log_gamma_abs(0.5 * dn));
  return {n, alpha, std::exp(log_value)};
}

SphereGrid verification_grid(int n, const QuadratureSpec& spec) {
  if (n <= 2) return sphere_grid(n, spec.sphere_resolution);
  if (n == 3) return sphere_grid(3, std::max(4, spec.sphere_resolution / 8));
  return sphere_grid(n, 4);
}

InequalityReport verify_ahls_low(const TestFunction& f, double alpha, const QuadratureSpec& spec) {
  require(alpha > 0.0 && alpha < f.dim(), "verify_ahls_low needs 0 < alpha < n");
  return ahls_chain(f, alpha, spec, false);
}

InequalityReport verify_ahls_high(const TestFunction& f, double alpha, const QuadratureSpec& spec) {
  require(alpha > f.dim(), "verify_ahls_high needs alpha > n");
  return ahls_chain(f, alpha, spec, true);
}

InequalityReport verify_reverse_logconcave(const TestFunction& f, double alpha, const QuadratureSpec& spec,
                                           ReverseVariant variant, const HlsOptions& options) {
  const int n = f.dim();
  const double dn = n;
  if (!concavity_check(f, 0.0, spec)) throw Error(ErrorKind::PreconditionFailed, "f is not log-concave");
  InequalityReport r;
  r.params = function_params(f, alpha);
  r.params["path"] = options.closed_forms ? "closed form where available" : "quadrature";
  const bool extremal = f.family() == TestFunction::Family::SimplexExponential;
  const double l1 = lp_functional(f, 1.0, spec), l2 = lp_functional(f, 2.0, spec);
  const SphereGrid grid = verification_grid(n, spec);
  if (variant == ReverseVariant::Hls) {
    require(alpha > 0.0, "alpha must be positive");
    r.check = "reverse_logconcave_hls";
    const HlsBodyResult H = hls_body(f, alpha, grid, spec, options);
    if (!H.finite()) return skipped(r.check, r.params, divergence_reason(H));
    r.left = std::exp(alpha / dn * std::lgamma(dn + 1.0) - std::lgamma(alpha)) *
             std::pow(volume(H.body, spec), alpha / dn);
    r.middle = std::pow(l2, 2.0 - 2.0 * alpha / dn) * std::pow(l1, 2.0 * alpha / dn);
    r.right = sq(lp_functional(f, 2.0 * dn / (dn + alpha), spec));
    const bool at_n = alpha == dn;
    classify_chain(r, alpha <= dn ? Chain::Geq : Chain::Leq, H.max_rel_error(), extremal || at_n, at_n);
    r.notes.push_back("H_alpha f: " + H.path);
  } else {
    require(alpha > 0.0 && alpha < 0.5, "polar variant needs 0 < alpha < 1/2");
    r.check = "reverse_logconcave_polar";
    const HlsBodyResult P = polar_projection_body(f, alpha, grid, spec, options);
    if (!P.finite()) return skipped(r.check, r.params, divergence_reason(P));
    r.left = alpha / (std::exp(2.0 * alpha / dn * std::lgamma(dn + 1.0)) * gamma_fn(1.0 - 2.0 * alpha)) *
             std::pow(volume(P.body, spec), -2.0 * alpha / dn);
    r.middle = std::pow(l2, 2.0 + 4.0 * alpha / dn) * std::pow(l1, -4.0 * alpha / dn);
    r.right = sq(lp_functional(f, 2.0 * dn / (dn - 2.0 * alpha), spec));
    classify_chain(r, Chain::Leq, P.max_rel_error(), extremal, false);
    r.notes.push_back("Pi*_alpha f: " + P.path);
  }
  return r;
}

double inclusion_normalizer(int n, double s, double alpha) {
  require(alpha > -1.0, "alpha must exceed -1");
  require(s >= 0.0, "concavity class must be non-negative");
  if (s == 0.0) {
    if (alpha == 0.0) return std::exp(-kEulerGamma);
    return std::exp(std::lgamma(alpha + 1.0) / alpha);
  }
  const double m = std::isinf(s) ? static_cast<double>(n) : n + 2.0 / s;
  if (alpha == 0.0) return std::exp(digamma(1.0) - digamma(m + 1.0));
  return std::exp((std::log(m) + std::log(beta_fn(alpha + 1.0, m))) / alpha);
}

InequalityReport verify_inclusion(const TestFunction& f, std::span<const double> alphas_in, double s,
                                  const QuadratureSpec& spec, std::optional<std::vector<Vec>> directions) {
  const int n = f.dim();
  if (!concavity_check(f, s, spec)) {
    std::ostringstream os;
    os << "f is not " << format_double(s) << "-concave";
    throw Error(ErrorKind::PreconditionFailed, os.str());
  }
  require(!alphas_in.empty(), "alpha grid is empty");
  std::vector<double> alphas(alphas_in.begin(), alphas_in.end());
  std::sort(alphas.begin(), alphas.end());

  InequalityReport r;
  r.check = "inclusion";
  r.params = function_params(f, alphas.front());
  r.params.erase("alpha");
  r.params["alphas"] = alphas;
  r.params["s"] = std::isinf(s) ? json("inf") : json(s);
  const SphereGrid grid = directions ? scattered_grid(n, *directions) : verification_grid(n, spec);
  r.params["directions"] = grid.size();

  bool hyperplane = true;
  for (const Vec& d : grid.directions)
    if (std::abs(d.sum()) > 1e-12) hyperplane = false;
  const bool equality = f.family() == TestFunction::Family::SimplexExponential ||
                        (f.family() == TestFunction::Family::SConcaveSimplex && hyperplane) ||
                        (std::isinf(s) && f.body().shape() == StarBody::Shape::Simplex &&
                         f.body().kind() == StarBody::Kind::Polytope);

  std::vector<std::vector<double>> rows;
  double err = 0.0;
  for (double a : alphas) {
    const HlsBodyResult R = radial_mean_function_body(f, a, grid, spec);
    if (!R.finite()) return skipped(r.check, r.params, divergence_reason(R));
    err = std::max(err, R.max_rel_error());
    const double c = inclusion_normalizer(n, s, a);
    std::vector<double> row;
    for (double rho : R.body.radii()) row.push_back(rho / c);
    rows.push_back(std::move(row));
  }
  const MonotoneSummary sum = monotone_summary(rows);
  r.left = rows.front()[sum.dir];
  r.middle = rows.back()[sum.dir];
  classify_monotone(r, sum, err, equality);
  r.notes.push_back("left/middle: normalized radius at the smallest/largest alpha in the worst direction");
  return r;
}

std::vector<InequalityReport> verify_sconcave_corollaries(const TestFunction& f, double alpha,
                                                          const QuadratureSpec& spec, std::optional<double> s_opt) {
  const int n = f.dim();
  const double dn = n;
  double s;
  if (s_opt) s = *s_opt;
  else if (f.family() == TestFunction::Family::SConcaveSimplex || f.family() == TestFunction::Family::Indicator)
    s = f.s();
  else
    throw Error(ErrorKind::PreconditionFailed, "concavity class s must be given for this family");
  json params = function_params(f, alpha);
  params["s"] = std::isinf(s) ? json("inf") : json(s);
  if (std::isinf(s)) return {skipped("sconcave_corollary", params, "s=∞ handled by GZ body inclusion")};
  require(s > 0.0, "corollaries need s > 0");
  if (!concavity_check(f, s, spec)) throw Error(ErrorKind::PreconditionFailed, "f is not s-concave");
  const double m = dn + 2.0 / s;
  const double l1 = lp_functional(f, 1.0, spec), l2 = lp_functional(f, 2.0, spec);
  const SphereGrid grid = verification_grid(n, spec);
  const double nb = dn * beta_fn(dn, m + 1.0);
  std::vector<InequalityReport> out;

  InequalityReport h;
  h.check = "sconcave_corollary_hls";
  h.params = params;
  if (alpha == dn) {
    out.push_back(skipped(h.check, params, "alpha = n is the volume identity"));
  } else {
    const HlsBodyResult H = hls_body(f, alpha, grid, spec);
    if (!H.finite()) {
      out.push_back(skipped(h.check, params, divergence_reason(H)));
    } else {
      h.left = std::pow(nb, alpha / dn) / beta_fn(alpha, m + 1.0) * std::pow(volume(H.body, spec), alpha / dn);
      h.middle = std::pow(l2, 2.0 - 2.0 * alpha / dn) * std::pow(l1, 2.0 * alpha / dn);
      h.right = sq(lp_functional(f, 2.0 * dn / (dn + alpha), spec));
      classify_chain(h, alpha < dn ? Chain::Geq : Chain::Leq, H.max_rel_error(), false, false);
      h.notes.push_back("sharpness of the first inequality is open; margins only");
      out.push_back(h);
    }
  }
  if (alpha > 0.0 && alpha < 0.5) {
    InequalityReport p;
    p.check = "sconcave_corollary_polar";
    p.params = params;
    const HlsBodyResult P = polar_projection_body(f, alpha, grid, spec);
    if (!P.finite()) {
      out.push_back(skipped(p.check, params, divergence_reason(P)));
    } else {
      p.left = std::pow(nb, -2.0 * alpha / dn) / (2.0 * std::abs(beta_fn(-2.0 * alpha, m + 1.0))) *
               std::pow(volume(P.body, spec), -2.0 * alpha / dn);
      p.middle = std::pow(l2, 2.0 + 4.0 * alpha / dn) * std::pow(l1, -4.0 * alpha / dn);
      p.right = sq(lp_functional(f, 2.0 * dn / (dn - 2.0 * alpha), spec));
      classify_chain(p, Chain::Leq, P.max_rel_error(), false, false);
      p.notes.push_back("sharpness of the first inequality is open; margins only");
      out.push_back(p);
    }
  }
  return out;
}

InequalityReport verify_rearrangement_monotonicity(const TestFunction& f, double alpha, const QuadratureSpec& spec) {
  const int n = f.dim();
  require(alpha > 0.0 && alpha != n, "rearrangement check needs 0 < alpha != n");
  InequalityReport r;
  r.check = "rearrangement_monotonicity";
  r.params = function_params(f, alpha);
  const SphereGrid grid = verification_grid(n, spec);
  const TestFunction star = schwarz_rearrangement(f, spec);
  const HlsBodyResult H = hls_body(f, alpha, grid, spec);
  const HlsBodyResult Hs = hls_body(star, alpha, grid, spec);
  if (!H.finite() || !Hs.finite()) return skipped(r.check, r.params, divergence_reason(H.finite() ? Hs : H));
  r.left = volume(H.body, spec);
  r.middle = volume(Hs.body, spec);
  classify_chain(r, alpha < n ? Chain::Leq : Chain::Geq, std::max(H.max_rel_error(), Hs.max_rel_error()),
                 f.symmetric_up_to_translation(), false);
  r.notes.push_back("left: vol(H_alpha f), middle: vol(H_alpha f*) with f* = " + star.describe());
  return r;
}

InequalityReport check_gamma_constant(int n, double alpha, std::optional<double> expected, double rel_tol) {
  InequalityReport r;
  r.check = "gamma_constant";
  r.params = {{"n", n}, {"alpha", alpha}};
  const double v = gamma_constant(n, alpha).value;
  if (!expected && alpha == n) expected = 1.0;
  if (expected) {
    classify_identity(r, v, *expected, rel_tol);
  } else {
    r.left = v;
    r.status = std::isfinite(v) && v > 0.0 ? Status::Holds : Status::Violated;
  }
  return r;
}

InequalityReport check_volume_identity(const TestFunction& f, VolumeIdentity which, const QuadratureSpec& spec,
                                       double rel_tol) {
  const int n = f.dim();
  InequalityReport r;
  r.check = which == VolumeIdentity::H ? "volume_identity_hls" : "volume_identity_radial_mean";
  r.params = function_params(f, n);
  const SphereGrid grid = verification_grid(n, spec);
  const double l1 = lp_functional(f, 1.0, spec);
  if (which == VolumeIdentity::H) {
    const HlsBodyResult H = hls_body(f, n, grid, spec);
    classify_identity(r, volume(H.body, spec), l1 * l1 / n, rel_tol);
    r.notes.push_back("vol(H_n f) against |f|_1^2 / n");
  } else {
    const double l2 = lp_functional(f, 2.0, spec);
    const HlsBodyResult R = radial_mean_function_body(f, n, grid, spec);
    classify_identity(r, volume(R.body, spec), l1 * l1 / (l2 * l2), rel_tol);
    r.notes.push_back("vol(R_n f) against |f|_1^2 / |f|_2^2");
  }
  return r;
}

InequalityReport check_autocorrelation_mc(const TestFunction& f, std::span<const Vec> shifts,
                                          const QuadratureSpec& spec, double rel_tol) {
  InequalityReport r;
  r.check = "autocorrelation_mc";
  r.params = function_params(f, 0.0);
  r.params.erase("alpha");
  r.params["points"] = shifts.size();
  r.params["samples"] = spec.mc_samples;
  double worst = 0.0;
  std::string path;
  for (const Vec& y : shifts) {
    const double exact = autocorrelation(f, y, spec);
    const McEstimate mc = autocorrelation_mc(f, y, spec);
    worst = std::max(worst, std::abs(mc.estimate - exact) / exact);
    if (y.norm() > 0.0) path = autocorr_profile(f, y / y.norm(), spec).path;
  }
  classify_discrepancy(r, worst, rel_tol);
  r.notes.push_back("left: largest relative deviation of the Monte Carlo estimate; engine path: " + path);
  return r;
}

InequalityReport check_continuation(std::span<const double> alphas, std::span<const double> s_values,
                                    const QuadratureSpec& spec) {
  InequalityReport r;
  r.check = "continuation";
  r.params = {{"alphas", std::vector<double>(alphas.begin(), alphas.end())},
              {"s", std::vector<double>(s_values.begin(), s_values.end())}};
  const double splits[] = {0.25, 0.5, 1.0, 2.0};
  double worst = 0.0, spread = 0.0;
  auto run = [&](const ScalarFn& g, const ScalarFn& deficit, std::optional<double> support, double a,
                 double expected) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double t0 : splits) {
      PowerWeightOptions opt;
      opt.g0 = 1.0;
      opt.split = t0;
      opt.support_end = support;
      opt.deficit = deficit;
      const double v = integrate_powerweight_detail(g, a, opt, spec).value;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      if (t0 == 1.0) worst = std::max(worst, std::abs(v - expected) / std::abs(expected));
    }
    spread = std::max(spread, (hi - lo) / std::abs(expected));
  };
  for (double a : alphas) {
    require(a > -1.0 && a != 0.0, "continuation alphas lie in (-1, 0) or (0, inf)");
    run([](double t) { return std::exp(-t); }, [](double t) { return -std::expm1(-t); }, std::nullopt, a,
        gamma_fn(a));
    for (double s : s_values) {
      require(s > 0.0, "s must be positive");
      const double q = 1.0 / s;
      run([q](double t) { return t >= 1.0 ? 0.0 : std::pow(1.0 - t, q); },
          [q](double t) { return t >= 1.0 ? 1.0 : -std::expm1(q * std::log1p(-t)); }, 1.0, a,
          beta_fn(a, 1.0 + q));
    }
  }
  classify_discrepancy(r, worst, spec.rel_tol);
  r.middle = spread;
  r.margin2 = -spread;
  if (!(spread <= 10.0 * spec.rel_tol)) {
    r.status = Status::Violated;
    r.notes.push_back("split-point dependence exceeds 10 rel_tol");
  }
  r.notes.push_back("left: worst relative error against Gamma/Beta; middle: worst relative spread over split points");
  return r;
}

InequalityReport check_affine_invariance(const TestFunction& f, const TestFunction& g, double alpha,
                                         const QuadratureSpec& spec, double rel_tol) {
  InequalityReport r;
  r.check = "affine_invariance";
  r.params = function_params(f, alpha);
  r.params["image"] = g.describe();
  const SphereGrid grid = verification_grid(f.dim(), spec);
  const double a = volume(hls_body(f, alpha, grid, spec).body, spec);
  const double b = volume(hls_body(g, alpha, grid, spec).body, spec);
  classify_identity(r, b, a, rel_tol);
  r.notes.push_back("left: vol(H_alpha g), middle: vol(H_alpha f)");
  return r;
}

InequalityReport check_convexity(const TestFunction& f, double alpha, const QuadratureSpec& spec) {
  InequalityReport r;
  r.check = "convexity";
  r.params = function_params(f, alpha);
  const HlsBodyResult H = hls_body(f, alpha, verification_grid(f.dim(), spec), spec);
  if (!H.finite()) return skipped(r.check, r.params, divergence_reason(H));
  r.status = convexity_check(H.body, spec) ? Status::Holds : Status::Violated;
  r.notes.push_back("midpoint test on sampled boundary pairs of H_alpha f");
  return r;
}

InequalityReport check_zeta(const TestFunction& f, const Vec& xi, std::span<const double> alphas_in,
                            const QuadratureSpec& spec) {
  InequalityReport r;
  r.check = "zeta_monotonicity";
  r.params = function_params(f, 0.0);
  r.params.erase("alpha");
  std::vector<double> alphas(alphas_in.begin(), alphas_in.end());
  std::sort(alphas.begin(), alphas.end());
  r.params["alphas"] = alphas;
  r.params["direction"] = std::vector<double>(xi.data(), xi.data() + xi.size());
  const AutocorrProfile p = autocorr_profile(f, xi / xi.norm(), spec);
  auto phi = [&p](double t) {
    if (t <= 0.0) return 0.0;
    const double d = p.deficit(t) / p.g0;
    if (d >= 1.0) return std::numeric_limits<double>::infinity();
    if (d < 0.5) return -std::log1p(-d);
    const double g = p.g(t) / p.g0;
    return g > 0.0 ? -std::log(g) : std::numeric_limits<double>::infinity();
  };
  auto omega = [](double t) { return std::exp(-t); };
  const ZetaProfile z = zeta_profile(omega, phi, alphas, spec, "exp(-t)", "-log(Gf(t xi)/Gf(0))");
  std::vector<std::vector<double>> rows;
  for (double v : z.values) rows.push_back({v});
  const MonotoneSummary sum = monotone_summary(rows);
  r.left = z.values.front();
  r.middle = z.values.back();
  classify_monotone(r, sum, 0.0, p.pure_exponential);
  r.notes.push_back("autocorrelation path: " + p.path);
  return r;
}

}  // namespace ahls
