#include "ahls/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <queue>
#include <sstream>

#include "ahls/error.hpp"

namespace ahls {

void QuadratureSpec::validate() const {
  require(radial_nodes >= 1, "radial_nodes must be >= 1");
  require(sphere_resolution >= 1, "sphere_resolution must be >= 1");
  require(mc_samples >= 1, "mc_samples must be >= 1");
  require(max_panels >= 1, "max_panels must be >= 1");
  require(tail_cut > 0.0, "tail_cut must be positive");
  require(rel_tol > 0.0 && abs_tol > 0.0, "rel_tol and abs_tol must be positive");
}

namespace {

GaussRule compute_gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

double apply_rule(const GaussRule& rule, const ScalarFn& f, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double v = f(mid + half * rule.nodes[i]);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "integrand is not finite at t=" << (mid + half * rule.nodes[i]);
      throw Error(ErrorKind::NonFinite, os.str());
    }
    sum += rule.weights[i] * v;
  }
  return sum * half;
}

struct Panel {
  double a, b;
  double left, right;  // rule applied to each half
  double error;
  bool splittable;
};

Panel make_panel(const GaussRule& rule, const ScalarFn& f, double a, double b, std::optional<double> whole) {
  const double m = 0.5 * (a + b);
  Panel p{a, b, 0.0, 0.0, 0.0, true};
  const double w = whole ? *whole : apply_rule(rule, f, a, b);
  p.left = apply_rule(rule, f, a, m);
  p.right = apply_rule(rule, f, m, b);
  p.error = std::abs(p.left + p.right - w);
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  p.splittable = (b - a) > 64.0 * std::numeric_limits<double>::epsilon() * scale;
  return p;
}

struct AdaptiveState {
  std::vector<Panel> panels;
  bool converged = false;
};

AdaptiveState refine(const ScalarFn& f, double a, double b, const QuadratureSpec& spec,
                     std::span<const double> breakpoints) {
  require(b >= a, "integration interval must satisfy a <= b");
  const GaussRule& rule = gauss_legendre(spec.radial_nodes);
  std::vector<double> cuts{a};
  for (double x : breakpoints)
    if (x > a && x < b) cuts.push_back(x);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  AdaptiveState state;
  if (b == a) {
    state.converged = true;
    return state;
  }
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    state.panels.push_back(make_panel(rule, f, cuts[i], cuts[i + 1], std::nullopt));

  // Max-heap on error, ties broken by position for determinism.
  auto cmp = [&](std::size_t x, std::size_t y) {
    const Panel& px = state.panels[x];
    const Panel& py = state.panels[y];
    if (px.error != py.error) return px.error < py.error;
    return px.a > py.a;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> heap(cmp);
  for (std::size_t i = 0; i < state.panels.size(); ++i)
    if (state.panels[i].splittable) heap.push(i);

  while (true) {
    double total = 0.0, err = 0.0;
    for (const Panel& p : state.panels) {
      total += p.left + p.right;
      err += p.error;
    }
    if (err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
      state.converged = true;
      return state;
    }
    if (heap.empty() || static_cast<int>(state.panels.size()) >= spec.max_panels) return state;
    const std::size_t idx = heap.top();
    heap.pop();
    const Panel parent = state.panels[idx];
    const double m = 0.5 * (parent.a + parent.b);
    state.panels[idx] = make_panel(rule, f, parent.a, m, parent.left);
    state.panels.push_back(make_panel(rule, f, m, parent.b, parent.right));
    if (state.panels[idx].splittable) heap.push(idx);
    if (state.panels.back().splittable) heap.push(state.panels.size() - 1);
  }
}

double ordered_sum(std::vector<Panel> panels, double* error) {
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  double total = 0.0, err = 0.0;
  for (const Panel& p : panels) {
    total += p.left + p.right;
    err += p.error;
  }
  if (error) *error = err;
  return total;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  require(order >= 1, "Gauss-Legendre order must be >= 1");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<GaussRule>(compute_gauss_legendre(order));
  return *slot;
}

IntegrationResult integrate_adaptive(const ScalarFn& f, double a, double b, const QuadratureSpec& spec,
                                     std::span<const double> breakpoints) {
  AdaptiveState state = refine(f, a, b, spec, breakpoints);
  IntegrationResult result;
  result.value = ordered_sum(state.panels, &result.error);
  result.panels = static_cast<int>(state.panels.size());
  result.converged = state.converged;
  if (!state.converged) {
    std::ostringstream os;
    os << "adaptive quadrature on [" << a << ", " << b << "] stalled at error " << result.error << " (value "
       << result.value << ", " << result.panels << " panels)";
    throw Error(ErrorKind::NonConvergent, os.str());
  }
  return result;
}

std::vector<std::pair<double, double>> adaptive_rule(const ScalarFn& driver, double a, double b,
                                                     const QuadratureSpec& spec,
                                                     std::span<const double> breakpoints) {
  AdaptiveState state = refine(driver, a, b, spec, breakpoints);
  if (!state.converged)
    throw Error(ErrorKind::NonConvergent, "adaptive rule construction exhausted the panel budget");
  std::sort(state.panels.begin(), state.panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  const GaussRule& rule = gauss_legendre(spec.radial_nodes);
  std::vector<std::pair<double, double>> out;
  out.reserve(state.panels.size() * 2 * rule.nodes.size());
  for (const Panel& p : state.panels) {
    const double m = 0.5 * (p.a + p.b);
    for (auto [lo, hi] : {std::pair{p.a, m}, std::pair{m, p.b}}) {
      const double half = 0.5 * (hi - lo);
      const double mid = 0.5 * (hi + lo);
      for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        out.emplace_back(mid + half * rule.nodes[i], half * rule.weights[i]);
    }
  }
  return out;
}

IntegrationResult integrate_halfline(const ScalarFn& f, double a, const QuadratureSpec& spec,
                                     std::span<const double> breakpoints) {
  auto mapped = [&](double u) {
    const double one_minus = 1.0 - u;
    const double t = a + u / one_minus;
    const double v = f(t);
    if (v == 0.0) return 0.0;
    return v / (one_minus * one_minus);
  };
  std::vector<double> ub;
  for (double t : breakpoints)
    if (t > a) ub.push_back((t - a) / (1.0 + t - a));
  return integrate_adaptive(mapped, 0.0, 1.0, spec, ub);
}

IntegrationResult integrate_powerweight_detail(const ScalarFn& g, double alpha, const PowerWeightOptions& options,
                                               const QuadratureSpec& spec) {
  require(std::isfinite(alpha) && alpha > -1.0 && alpha != 0.0, "alpha must lie in (-1, 0) or (0, inf)");
  require(alpha > 0.0 || options.g0.has_value(), "g(0) must be supplied when alpha < 0");
  require(options.split > 0.0, "split point must be positive");

  double t0 = options.split;
  if (options.support_end) {
    require(*options.support_end > 0.0, "support end must be positive");
    t0 = std::min(t0, *options.support_end);
  }

  auto weighted = [&](double t) {
    if (t <= 0.0) return 0.0;
    const double v = g(t);
    if (v == 0.0) return 0.0;
    return std::pow(t, alpha - 1.0) * v;
  };

  if (alpha > 0.0 && !options.support_end) {
    const double big = spec.tail_cut;
    const double d_far = big * std::abs(weighted(big));
    const double d_near = 0.01 * big * std::abs(weighted(0.01 * big));
    if (!std::isfinite(d_far) || (d_far > spec.abs_tol && d_far >= d_near)) {
      std::ostringstream os;
      os << "power-weighted integrand does not decay (alpha=" << alpha << ", t^alpha g(t)=" << d_far
         << " at t=" << big << ")";
      throw Error(ErrorKind::DivergentIntegral, os.str());
    }
  }

  std::vector<double> inner, outer;
  for (double b : options.breakpoints) {
    if (b > 0.0 && b < t0) inner.push_back(b);
    if (b > t0) outer.push_back(b);
  }

  IntegrationResult tail;
  const bool has_tail = !(options.support_end && *options.support_end <= t0);
  if (has_tail) {
    tail = options.support_end ? integrate_adaptive(weighted, t0, *options.support_end, spec, outer)
                               : integrate_halfline(weighted, t0, spec, outer);
  }

  IntegrationResult out;
  if (alpha < 0.0) {
    const double g0 = *options.g0;
    auto deficit = [&](double t) { return options.deficit ? options.deficit(t) : g0 - g(t); };
    // t = t0 v^{1/(alpha+1)} turns t^{alpha-1} (g0 - g) dt into a bounded integrand.
    const double p = 1.0 / (alpha + 1.0);
    auto head_fn = [&](double v) {
      if (v <= 0.0) return 0.0;
      const double t = t0 * std::pow(v, p);
      if (t <= 0.0) return 0.0;
      return deficit(t) / t;
    };
    std::vector<double> vb;
    for (double b : inner) vb.push_back(std::pow(b / t0, alpha + 1.0));
    IntegrationResult head = integrate_adaptive(head_fn, 0.0, 1.0, spec, vb);
    const double factor = std::pow(t0, alpha + 1.0) / (alpha + 1.0);
    out.value = tail.value - factor * head.value + g0 * std::pow(t0, alpha) / alpha;
    out.error = tail.error + factor * head.error;
    out.panels = tail.panels + head.panels;
  } else if (alpha < 1.0) {
    // t = t0 v^{1/alpha} absorbs the t^{alpha-1} singularity.
    const double p = 1.0 / alpha;
    auto head_fn = [&](double v) { return v <= 0.0 ? g(0.0) : g(t0 * std::pow(v, p)); };
    std::vector<double> vb;
    for (double b : inner) vb.push_back(std::pow(b / t0, alpha));
    IntegrationResult head = integrate_adaptive(head_fn, 0.0, 1.0, spec, vb);
    const double factor = std::pow(t0, alpha) / alpha;
    out.value = factor * head.value + tail.value;
    out.error = factor * head.error + tail.error;
    out.panels = tail.panels + head.panels;
  } else {
    IntegrationResult head = integrate_adaptive(weighted, 0.0, t0, spec, inner);
    out.value = head.value + tail.value;
    out.error = head.error + tail.error;
    out.panels = tail.panels + head.panels;
  }
  out.converged = true;

  if (alpha > 0.0 && has_tail && !options.support_end) {
    const double big = spec.tail_cut;
    const double d_far = big * std::abs(weighted(big));
    if (d_far > std::max(spec.abs_tol, spec.rel_tol * std::abs(out.value))) {
      std::ostringstream os;
      os << "tail beyond t=" << big << " is not negligible (t^alpha g(t)=" << d_far << ")";
      throw Error(ErrorKind::NonConvergent, os.str());
    }
  }
  return out;
}

double integrate_powerweight(const ScalarFn& g, double alpha, std::optional<double> g0, const QuadratureSpec& spec) {
  PowerWeightOptions options;
  options.g0 = g0;
  return integrate_powerweight_detail(g, alpha, options, spec).value;
}

}  // namespace ahls
