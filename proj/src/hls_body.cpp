#include "ahls/hls_body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ahls/error.hpp"
#include "ahls/parallel.hpp"
#include "ahls/random.hpp"
#include "ahls/special.hpp"

namespace ahls {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Construct { H, Pi, R };

struct Ray {
  double radius = 0.0;
  DirectionDiagnostic diag;
};

struct Moment {
  double value = 0.0;
  double error = 0.0;
};

double fixed_rule(const std::function<double(double)>& fn, double a, double b) {
  constexpr int kPanels = 8;
  const GaussRule& rule = gauss_legendre(8);
  const double h = (b - a) / kPanels;
  double total = 0.0;
  for (int k = 0; k < kPanels; ++k) {
    const double mid = a + (k + 0.5) * h;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) total += rule.weights[i] * 0.5 * h * fn(mid + 0.5 * h * rule.nodes[i]);
  }
  return total;
}

double split_point(const AutocorrProfile& p) {
  if (p.decay == DecayKind::Exponential && p.decay_value > 0.0) return 1.0 / p.decay_value;
  if (p.decay == DecayKind::Compact) return 0.5 * p.decay_value;
  return 1.0;
}

// int_0^inf t^{a-1} g(t) dt for a > 0, and the continuation
// int_0^inf t^{a-1} (g(t) - g0) dt for -1 < a < 0.
Moment mellin(const AutocorrProfile& p, double a, const QuadratureSpec& spec) {
  if (!p.deterministic) {
    const auto S = p.support();
    require(S.has_value(), "sampled autocorrelation needs compact support");
    if (a > 0.0) {
      const double v = fixed_rule([&](double v) { return p.g(*S * std::pow(v, 1.0 / a)); }, 0.0, 1.0);
      return {std::pow(*S, a) / a * v, 0.0};
    }
    const double q = 1.0 / (a + 1.0);
    const double v = fixed_rule(
        [&](double v) {
          const double t = *S * std::pow(v, q);
          return t > 0.0 ? p.deficit(t) / t : 0.0;
        },
        0.0, 1.0);
    return {-std::pow(*S, a + 1.0) / (a + 1.0) * v + p.g0 * std::pow(*S, a) / a, 0.0};
  }
  PowerWeightOptions opt;
  opt.g0 = p.g0;
  opt.split = split_point(p);
  opt.support_end = p.support();
  opt.breakpoints = p.breakpoints;
  opt.deficit = p.deficit;
  const IntegrationResult r = integrate_powerweight_detail(p.g, a, opt, spec);
  return {r.value, r.error};
}

// int_0^inf t^{a-1} deficit(t) dt for a <= -1, where no subtraction is needed.
Moment deficit_moment(const AutocorrProfile& p, double a, const QuadratureSpec& spec) {
  auto fn = [&](double t) { return t > 0.0 ? std::pow(t, a - 1.0) * p.deficit(t) : 0.0; };
  const double t0 = split_point(p);
  if (!p.deterministic) {
    const double S = *p.support();
    return {fixed_rule(fn, 0.0, S) + p.g0 * std::pow(S, a) / (-a), 0.0};
  }
  std::vector<double> inner;
  for (double b : p.breakpoints)
    if (b > 0.0 && b < t0) inner.push_back(b);
  const IntegrationResult head = integrate_adaptive(fn, 0.0, t0, spec, inner);
  const IntegrationResult tail = integrate_halfline(fn, t0, spec);
  return {head.value + tail.value, head.error + tail.error};
}

// log rho = -gamma + int_0^inf (g(t)/g0 - e^{-t}) / t dt
Moment log_radius(const AutocorrProfile& p, const QuadratureSpec& spec) {
  const double g0 = p.g0;
  auto head_fn = [&](double t) {
    if (t <= 0.0) return 0.0;
    const double diff = -p.deficit(t) / g0 - std::expm1(-t);
    if (std::abs(diff) < spec.abs_tol) return 0.0;
    return diff / t;
  };
  auto tail_fn = [&](double t) { return p.g(t) / (g0 * t); };
  const auto S = p.support();
  double t0 = split_point(p);
  if (S) t0 = std::min(t0, *S);
  const double e1 = -std::expint(-t0);
  if (!p.deterministic) {
    const double head = fixed_rule(head_fn, 0.0, t0);
    const double tail = fixed_rule(tail_fn, t0, *S);
    return {-kEulerGamma + head + tail - e1, 0.0};
  }
  std::vector<double> inner, outer;
  for (double b : p.breakpoints) {
    if (b > 0.0 && b < t0) inner.push_back(b);
    if (b > t0 && (!S || b < *S)) outer.push_back(b);
  }
  const IntegrationResult head = integrate_adaptive(head_fn, 0.0, t0, spec, inner);
  IntegrationResult tail;
  if (S) {
    if (*S > t0) tail = integrate_adaptive(tail_fn, t0, *S, spec, outer);
  } else {
    tail = integrate_halfline(tail_fn, t0, spec, outer);
  }
  return {-kEulerGamma + head.value + tail.value - e1, head.error + tail.error};
}

Ray closed_form_ray(const AutocorrProfile& p, Construct c, double alpha) {
  const double C = p.g0, rate = p.decay_value;
  Ray r;
  switch (c) {
    case Construct::H:
      r.radius = std::pow(C * gamma_fn(alpha), 1.0 / alpha) / rate;
      break;
    case Construct::Pi:
      r.radius = std::pow(-2.0 * C * gamma_fn(-2.0 * alpha), -0.5 / alpha) / rate;
      break;
    case Construct::R:
      r.radius = (alpha == 0.0 ? std::exp(-kEulerGamma) : std::pow(gamma_fn(alpha + 1.0), 1.0 / alpha)) / rate;
      break;
  }
  r.diag.note = "closed-form Mellin transform";
  return r;
}

Ray ray(const AutocorrProfile& p, Construct c, double alpha, const QuadratureSpec& spec, const HlsOptions& options) {
  if (options.closed_forms && p.pure_exponential) return closed_form_ray(p, c, alpha);
  Ray r;
  try {
    switch (c) {
      case Construct::H: {
        if (p.decay == DecayKind::Polynomial && p.decay_value > 0.0 && alpha >= p.decay_value) {
          std::ostringstream os;
          os << "autocorrelation decays like t^-" << p.decay_value << "; alpha=" << alpha << " diverges";
          throw Error(ErrorKind::DivergentIntegral, os.str());
        }
        const Moment m = mellin(p, alpha, spec);
        if (!(m.value > 0.0)) throw Error(ErrorKind::NonFinite, "non-positive moment");
        r.radius = std::pow(m.value, 1.0 / alpha);
        r.diag.rel_error = m.error / m.value / alpha;
        break;
      }
      case Construct::Pi: {
        const double a = -2.0 * alpha;
        const Moment m = a > -1.0 ? mellin(p, a, spec) : deficit_moment(p, a, spec);
        const double v = a > -1.0 ? -2.0 * m.value : 2.0 * m.value;
        if (!(v > 0.0)) throw Error(ErrorKind::NonFinite, "non-positive difference moment");
        r.radius = std::pow(v, 1.0 / a);
        r.diag.rel_error = 2.0 * m.error / v / std::abs(a);
        break;
      }
      case Construct::R: {
        if (alpha == 0.0) {
          const Moment m = log_radius(p, spec);
          r.radius = std::exp(m.value);
          r.diag.rel_error = m.error;
          break;
        }
        if (alpha > 0.0 && p.decay == DecayKind::Polynomial && p.decay_value > 0.0 && alpha >= p.decay_value)
          throw Error(ErrorKind::DivergentIntegral, "autocorrelation decays too slowly for this alpha");
        const Moment m = mellin(p, alpha, spec);
        const double v = alpha * m.value / p.g0;
        if (!(v > 0.0)) throw Error(ErrorKind::NonFinite, "non-positive radial mean moment");
        r.radius = std::pow(v, 1.0 / alpha);
        r.diag.rel_error = std::abs(alpha * m.error / p.g0 / v / alpha);
        break;
      }
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DivergentIntegral && e.kind() != ErrorKind::NonConvergent) throw;
    r.radius = kInf;
    r.diag.divergent = true;
    r.diag.converged = e.kind() != ErrorKind::NonConvergent;
    r.diag.note = e.what();
  }
  if (!p.deterministic) {
    r.diag.converged = false;
    r.diag.note = "fixed rule on a sampled autocorrelation";
  }
  return r;
}

// |A^{-1} xi| for an ellipsoidal gauge body.
double ellipsoid_scale(const StarBody& K, const Vec& xi) {
  if (K.kind() == StarBody::Kind::Ball) return xi.norm() / K.circumradius();
  return (K.matrix().inverse() * xi).norm();
}

HlsBodyResult build(const TestFunction& f, Construct c, double alpha, const SphereGrid& grid,
                    const QuadratureSpec& spec, const HlsOptions& options, const std::string& name) {
  require(grid.dim == f.dim(), "sphere grid dimension does not match function");
  spec.validate();
  const std::size_t m = grid.size();
  std::vector<double> radii(m);
  std::vector<DirectionDiagnostic> diags(m);
  std::string path;

  if (options.reduce_symmetry && f.ellipsoidal()) {
    const Vec& ref = grid.directions[0];
    const AutocorrProfile p = autocorr_profile(f, ref, spec);
    const Ray r0 = ray(p, c, alpha, spec, options);
    const double u0 = ellipsoid_scale(f.body(), ref);
    for (std::size_t i = 0; i < m; ++i) {
      radii[i] = r0.radius * u0 / ellipsoid_scale(f.body(), grid.directions[i]);
      diags[i] = r0.diag;
    }
    path = p.path + "; one ray rescaled by |A^-1 xi|";
  } else {
    std::vector<std::string> paths(m);
    parallel_for(m, [&](std::size_t i) {
      const AutocorrProfile p = autocorr_profile(f, grid.directions[i], spec);
      const Ray r = ray(p, c, alpha, spec, options);
      radii[i] = r.radius;
      diags[i] = r.diag;
      paths[i] = p.path;
    });
    path = paths[0];
    for (const std::string& s : paths)
      if (s != path) {
        path = "mixed per direction";
        break;
      }
  }
  if (options.closed_forms && path.find("simplex exponential") != std::string::npos)
    path += "; closed-form Mellin transform";
  std::ostringstream os;
  os << name << "(alpha=" << format_double(alpha) << ", " << f.describe() << ")";
  HlsBodyResult out{StarBody::sampled(grid, radii, os.str()), alpha, std::move(diags), path};
  return out;
}

}  // namespace

bool HlsBodyResult::finite() const { return divergent_count() == 0; }

double HlsBodyResult::max_rel_error() const {
  double e = 0.0;
  for (const auto& d : diagnostics) e = std::max(e, d.rel_error);
  return e;
}

std::size_t HlsBodyResult::divergent_count() const {
  return static_cast<std::size_t>(
      std::count_if(diagnostics.begin(), diagnostics.end(), [](const DirectionDiagnostic& d) { return d.divergent; }));
}

HlsBodyResult hls_body(const TestFunction& f, double alpha, const SphereGrid& grid, const QuadratureSpec& spec,
                       const HlsOptions& options) {
  require(std::isfinite(alpha) && alpha > 0.0, "H_alpha f needs alpha > 0");
  return build(f, Construct::H, alpha, grid, spec, options, "H");
}

HlsBodyResult polar_projection_body(const TestFunction& f, double alpha, const SphereGrid& grid,
                                    const QuadratureSpec& spec, const HlsOptions& options) {
  require(alpha > 0.0 && alpha < 1.0, "polar projection body needs 0 < alpha < 1");
  return build(f, Construct::Pi, alpha, grid, spec, options, "Pi*");
}

HlsBodyResult radial_mean_function_body(const TestFunction& f, double alpha, const SphereGrid& grid,
                                        const QuadratureSpec& spec, const HlsOptions& options) {
  require(std::isfinite(alpha) && alpha > -1.0, "R_alpha f needs alpha > -1");
  return build(f, Construct::R, alpha, grid, spec, options, "R");
}

double anisotropic_hls_functional(const HlsBodyResult& H, const StarBody& K, const QuadratureSpec& spec) {
  (void)spec;
  const SphereGrid& grid = H.body.grid();
  const int n = grid.dim;
  require(K.dim() == n, "body dimension does not match");
  const std::vector<double> rk = radial_values(K, grid);
  const std::vector<double>& rh = H.body.radii();
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::isinf(rh[i])) return kInf;
    v[i] = std::pow(rk[i], n - H.alpha) * std::pow(rh[i], H.alpha);
  }
  return grid.integrate(v);
}

double anisotropic_hls_functional(const TestFunction& f, const StarBody& K, double alpha, const SphereGrid& grid,
                                  const QuadratureSpec& spec) {
  return anisotropic_hls_functional(hls_body(f, alpha, grid, spec), K, spec);
}

McEstimate hls_double_integral_mc(const TestFunction& f, const StarBody& K, double alpha, const QuadratureSpec& spec) {
  require(alpha > 0.0, "alpha must be positive");
  const int n = f.dim();
  const double l1 = lp_functional(f, 1.0, spec);
  const double area = sphere_area(n);
  // z = r theta with r drawn from alpha r^{alpha-1} (1 + r)^{-alpha-1}, so the
  // weight r^{alpha-1} / q(r) is (1 + r)^{alpha+1} / alpha.
  McEstimate m = mc_mean(
      [&](CounterRng& rng) {
        const Vec x = f.sample(rng);
        const Vec theta = rng.unit_vector(n);
        const double u = std::pow(rng.uniform(), 1.0 / alpha);
        const double r = u / (1.0 - u);
        const double fx = f(x + r * theta);
        if (fx == 0.0) return 0.0;
        return area * fx * std::pow(K.radial(theta), n - alpha) * std::pow(1.0 + r, alpha + 1.0) / alpha;
      },
      spec, 0x4D15000000ull);
  m.estimate *= l1;
  m.std_error *= l1;
  return m;
}

double ZetaProfile::worst_increase() const {
  double w = -kInf;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) w = std::max(w, values[i + 1] - values[i]);
  return w;
}

ZetaProfile zeta_profile(const std::function<double(double)>& omega, const std::function<double(double)>& phi,
                         std::span<const double> alphas, const QuadratureSpec& spec, std::string omega_label,
                         std::string phi_label) {
  const double w0 = omega(0.0);
  if (!(w0 > 0.0) || !std::isfinite(w0)) throw Error(ErrorKind::AssumptionViolated, "omega(0) must be positive");
  if (std::abs(phi(0.0)) > 1e-12) throw Error(ErrorKind::AssumptionViolated, "phi(0) must vanish");
  double prev_phi = 0.0, prev_ratio = 0.0, prev_omega = w0;
  for (int k = 0; k < 64; ++k) {
    const double t = std::pow(10.0, -4.0 + 8.0 * k / 63.0);
    const double ph = phi(t), w = omega(t);
    const double slack = std::isinf(ph) ? 0.0 : 1e-9 * (1.0 + std::abs(ph));
    std::ostringstream os;
    if (ph < prev_phi - slack) os << "phi decreases near t=" << t;
    else if (k > 0 && ph / t < prev_ratio - slack / t) os << "phi(t)/t decreases near t=" << t;
    else if (w > prev_omega + 1e-9 * w0) os << "omega increases near t=" << t;
    if (!os.str().empty()) throw Error(ErrorKind::AssumptionViolated, os.str());
    prev_phi = ph;
    prev_ratio = ph / t;
    prev_omega = w;
  }

  auto composed = [&](double t) { return omega(phi(t)); };
  auto moment = [&](const std::function<double(double)>& g, double a) {
    return integrate_powerweight(g, a, w0, spec);
  };
  ZetaProfile out;
  out.omega_label = std::move(omega_label);
  out.phi_label = std::move(phi_label);
  for (double a : alphas) {
    require(a > -1.0 && std::isfinite(a), "zeta needs alpha > -1");
    double z;
    if (a == 0.0) {
      auto fn = [&](double t) { return t > 0.0 ? (omega(phi(t)) - omega(t)) / (t * w0) : 0.0; };
      const double head = integrate_adaptive(fn, 0.0, 1.0, spec).value;
      const double tail = integrate_halfline(fn, 1.0, spec).value;
      z = std::exp(head + tail);
    } else {
      z = std::pow(moment(composed, a) / moment(omega, a), 1.0 / a);
    }
    if (!std::isfinite(z) || !(z > 0.0)) throw Error(ErrorKind::NonFinite, "zeta is not positive and finite");
    out.alphas.push_back(a);
    out.values.push_back(z);
  }
  return out;
}

}  // namespace ahls
