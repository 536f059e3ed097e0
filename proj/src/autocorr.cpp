#include "ahls/autocorr.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "ahls/chord.hpp"
#include "ahls/error.hpp"
#include "ahls/special.hpp"

namespace ahls {

namespace {

QuadratureSpec tight(const QuadratureSpec& spec, double rel, double abs) {
  QuadratureSpec s = spec;
  s.rel_tol = std::min(spec.rel_tol, rel);
  s.abs_tol = std::min(spec.abs_tol, abs);
  return s;
}

// Volume of B^n intersected with B^n + r e1, and its complement in B^n.
double lens(int n, double r, bool deficit, const QuadratureSpec& spec) {
  if (r <= 0.0) return deficit ? 0.0 : ball_volume(n);
  if (r >= 2.0) return deficit ? ball_volume(n) : 0.0;
  if (n == 1) return deficit ? r : 2.0 - r;
  const double c = 2.0 * ball_volume(n - 1);
  const double theta = std::acos(0.5 * r);
  auto f = [n](double t) { return std::pow(std::sin(t), n); };
  const QuadratureSpec s = tight(spec, 1e-12, 1e-16);
  if (deficit) return c * integrate_adaptive(f, theta, 0.5 * std::numbers::pi, s).value;
  return c * integrate_adaptive(f, 0.0, theta, s).value;
}

// 2 int_{u >= -r/2} int_{rho >= 0} |S^{n-2}| rho^{n-2} F(h(|x|), h(|x + r e1|))
// with x = (u, rho omega); the integrand is symmetric about u = -r/2.
double isotropic_nested(const Profile& h, int n, double r, bool deficit, const QuadratureSpec& spec) {
  const std::optional<double> S = h.support_radius();
  auto F = [&](double a, double b) {
    const double ha = h(a), hb = h(b);
    return deficit ? (ha - hb) * (ha - hb) : ha * hb;
  };
  const double u_lo = -0.5 * r;
  std::optional<double> u_hi;
  if (S) {
    u_hi = deficit ? *S : *S - r;
    if (*u_hi <= u_lo) return 0.0;
  }
  const QuadratureSpec outer_spec = tight(spec, 1e-10, 1e-15);
  const QuadratureSpec inner_spec = tight(spec, 1e-11, 1e-16);
  std::vector<double> cuts;
  for (double b : {0.0, S ? *S - r : -1.0, S ? -*S : 1.0})
    if (b > u_lo && (!u_hi || b < *u_hi)) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());

  // Finite panels up to the last cut, then the half-line map; starting the
  // map far to the left of the peak would squeeze it below resolution.
  auto over_line = [&](const std::function<double(double)>& g) {
    if (u_hi) return integrate_adaptive(g, u_lo, *u_hi, outer_spec, cuts).value;
    if (cuts.empty()) return integrate_halfline(g, u_lo, outer_spec).value;
    const double last = cuts.back();
    std::vector<double> head(cuts.begin(), cuts.end() - 1);
    return integrate_adaptive(g, u_lo, last, outer_spec, head).value + integrate_halfline(g, last, outer_spec).value;
  };
  if (n == 1) {
    auto g = [&](double x) { return F(std::abs(x), std::abs(x + r)); };
    return 2.0 * over_line(g);
  }
  const double area = sphere_area(n - 1);
  auto line = [&](double u) {
    auto g = [&](double rho) {
      const double w = n == 2 ? 1.0 : std::pow(rho, n - 2);
      return w * F(std::hypot(u, rho), std::hypot(u + r, rho));
    };
    std::vector<double> rc;
    if (std::abs(u) > 0.0) rc.push_back(std::abs(u));
    if (S) {
      const double reach = deficit ? *S * *S - u * u : *S * *S - (u + r) * (u + r);
      if (reach <= 0.0) return 0.0;
      const double top = std::sqrt(reach);
      std::vector<double> inside;
      for (double b : rc)
        if (b < top) inside.push_back(b);
      return integrate_adaptive(g, 0.0, top, inner_spec, inside).value;
    }
    if (rc.empty()) return integrate_halfline(g, 0.0, inner_spec).value;
    return integrate_adaptive(g, 0.0, rc[0], inner_spec).value + integrate_halfline(g, rc[0], inner_spec).value;
  };
  return 2.0 * area * over_line(line);
}

double sum_neg(const Vec& v) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += std::max(0.0, -v(i));
  return s;
}

double sum_pos(const Vec& v) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += std::max(0.0, v(i));
  return s;
}

AutocorrProfile simplex_exponential_profile(const TestFunction& f, const Vec& xi) {
  const int n = f.dim();
  double det = 1.0;
  Vec w = xi;
  if (f.body().kind() == StarBody::Kind::LinearImage) {
    det = std::abs(f.body().matrix().determinant());
    w = f.body().matrix().inverse() * xi;
  }
  const double C = f.amplitude() * f.amplitude() * det * std::pow(2.0, -n);
  const double c = w.lpNorm<1>();
  AutocorrProfile p;
  p.xi = xi;
  p.g0 = C;
  p.decay = DecayKind::Exponential;
  p.decay_value = c;
  p.g = [C, c](double t) { return C * std::exp(-c * t); };
  p.deficit = [C, c](double t) { return -C * std::expm1(-c * t); };
  p.pure_exponential = true;
  p.path = "closed form (simplex exponential)";
  return p;
}

AutocorrProfile sconcave_profile(const TestFunction& f, const Vec& xi, const QuadratureSpec& spec) {
  const int n = f.dim();
  const double s = f.s();
  const double q = 1.0 / s;
  const double a2 = f.amplitude() * f.amplitude();
  const double fact = factorial(n - 1);
  const double neg = sum_neg(xi), pos = sum_pos(xi);
  const double l1 = neg + pos;
  const double m = n + 2.0 / s;
  const double amp = a2 * beta_fn(n, 1.0 + 2.0 / s) / fact;
  AutocorrProfile p;
  p.xi = xi;
  p.g0 = amp;
  p.decay = DecayKind::Compact;
  p.decay_value = 1.0 / std::max(neg, pos);
  if (std::abs(pos - neg) <= 1e-14 * l1) {
    p.g = [amp, l1, m](double t) {
      const double tau = 0.5 * l1 * t;
      return tau >= 1.0 ? 0.0 : amp * std::pow(1.0 - tau, m);
    };
    p.deficit = [amp, l1, m](double t) {
      const double tau = 0.5 * l1 * t;
      return tau >= 1.0 ? amp : -amp * std::expm1(m * std::log1p(-tau));
    };
    p.path = "closed form (mean-zero direction)";
    return p;
  }
  const QuadratureSpec qs = tight(spec, 1e-11, 1e-16);
  auto delta = [q](double x) { return x >= 1.0 ? 0.0 : std::pow(1.0 - x, q); };
  // delta(x) - delta(x + A) without cancellation
  auto drop = [q, delta](double x, double A) {
    if (x >= 1.0) return 0.0;
    if (x + A >= 1.0) return delta(x);
    return -std::pow(1.0 - x, q) * std::expm1(q * std::log1p(-A / (1.0 - x)));
  };
  p.g = [=](double t) {
    const double A = t * neg, B = t * pos;
    const double top = 1.0 - std::max(A, B);
    if (top <= 0.0) return 0.0;
    auto g = [&](double r) { return std::pow(r, n - 1) * delta(r + A) * delta(r + B); };
    return a2 / fact * integrate_adaptive(g, 0.0, top, qs).value;
  };
  p.deficit = [=](double t) {
    const double A = t * neg, B = t * pos;
    auto g = [&](double r) {
      return std::pow(r, n - 1) * (delta(r) * drop(r, B) + delta(r + B) * drop(r, A));
    };
    std::vector<double> cuts;
    for (double c : {1.0 - A, 1.0 - B})
      if (c > 0.0 && c < 1.0) cuts.push_back(c);
    std::sort(cuts.begin(), cuts.end());
    return a2 / fact * integrate_adaptive(g, 0.0, 1.0, qs, cuts).value;
  };
  p.path = "one-dimensional reduction (s-concave simplex)";
  return p;
}

AutocorrProfile ellipsoidal_profile(const TestFunction& f, const Vec& xi, const QuadratureSpec& spec) {
  const int n = f.dim();
  const StarBody& K = f.body();
  const double u = (K.kind() == StarBody::Kind::Ball) ? xi.norm() / K.circumradius()
                                                      : (K.matrix().inverse() * xi).norm();
  const double det = (K.kind() == StarBody::Kind::Ball) ? std::pow(K.circumradius(), n)
                                                        : std::abs(K.matrix().determinant());
  const double C = f.amplitude() * f.amplitude() * det;
  const Profile h = f.profile();
  AutocorrProfile p;
  p.xi = xi;
  p.g0 = C * h.moment(n, 2.0, spec) * ball_volume(n);
  if (h.kind == Profile::Kind::Step) {
    p.g = [=](double t) { return C * lens(n, u * t, false, spec); };
    p.deficit = [=](double t) { return C * lens(n, u * t, true, spec); };
    p.path = "closed form (ball overlap)";
  } else {
    p.g = [=](double t) { return C * isotropic_nested(h, n, u * t, false, spec); };
    p.deficit = [=](double t) { return 0.5 * C * isotropic_nested(h, n, u * t, true, spec); };
    p.path = "radial reduction (nested quadrature)";
  }
  if (auto S = h.support_radius()) {
    p.decay = DecayKind::Compact;
    p.decay_value = 2.0 * *S / u;
  } else if (h.kind == Profile::Kind::Cauchy) {
    p.decay = DecayKind::Polynomial;
    p.decay_value = 2.0 * h.beta;
  } else if (h.kind == Profile::Kind::Exponential) {
    p.decay = DecayKind::Exponential;
    p.decay_value = u;
  } else {
    p.decay = DecayKind::Polynomial;
    p.decay_value = 0.0;
  }
  return p;
}

AutocorrProfile box_profile(const TestFunction& f, const Vec& xi) {
  const auto [lo, hi] = *f.body().axis_box();
  const Vec L = hi - lo;
  const double a2 = f.amplitude() * f.amplitude();
  const double g0 = a2 * L.prod();
  AutocorrProfile p;
  p.xi = xi;
  p.g0 = g0;
  p.decay = DecayKind::Compact;
  double support = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < xi.size(); ++i)
    if (xi(i) != 0.0) {
      const double b = L(i) / std::abs(xi(i));
      support = std::min(support, b);
      p.breakpoints.push_back(b);
    }
  std::sort(p.breakpoints.begin(), p.breakpoints.end());
  p.decay_value = support;
  p.g = [=](double t) {
    double v = a2;
    for (Eigen::Index i = 0; i < xi.size(); ++i) v *= std::max(0.0, L(i) - t * std::abs(xi(i)));
    return v;
  };
  p.deficit = [=](double t) {
    double logsum = 0.0;
    for (Eigen::Index i = 0; i < xi.size(); ++i) {
      const double r = t * std::abs(xi(i)) / L(i);
      if (r >= 1.0) return g0;
      logsum += std::log1p(-r);
    }
    return -g0 * std::expm1(logsum);
  };
  p.path = "closed form (product of hats)";
  return p;
}

AutocorrProfile chord_profile(const TestFunction& f, const Vec& xi, const QuadratureSpec& spec) {
  const double a2 = f.amplitude() * f.amplitude();
  const StarBody E = f.body();
  AutocorrProfile p;
  p.xi = xi;
  p.g0 = a2 * volume(E, spec);
  p.decay = DecayKind::Compact;
  p.decay_value = 2.0 * E.circumradius();
  const QuadratureSpec qs = tight(spec, 1e-10, 1e-15);
  p.g = [=](double t) {
    return a2 * shadow_integral(E, xi, [t](double c) { return std::max(0.0, c - t); }, qs).value;
  };
  p.deficit = [=](double t) {
    return a2 * shadow_integral(E, xi, [t](double c) { return std::min(c, t); }, qs).value;
  };
  p.deterministic = E.dim() <= 3;
  p.path = E.dim() <= 3 ? "chord integration" : "chord integration (Monte Carlo shadow)";
  return p;
}

// E cap (E + t xi) = {a_i . x <= b_i + min(0, t a_i . xi)}
AutocorrProfile facet_profile(const TestFunction& f, const Vec& xi) {
  const StarBody E = f.body();
  const Mat A = E.normals();
  const Vec b = E.offsets();
  const Vec shift = A * xi;
  const double a2 = f.amplitude() * f.amplitude();
  const double v0 = polytope_volume(A, b);
  AutocorrProfile p;
  p.xi = xi;
  p.g0 = a2 * v0;
  p.decay = DecayKind::Compact;
  p.decay_value = 2.0 * E.circumradius();
  auto vol_at = [A, b, shift](double t) { return polytope_volume(A, b + (t * shift).cwiseMin(0.0)); };
  p.g = [a2, vol_at](double t) { return a2 * vol_at(t); };
  p.deficit = [a2, v0, vol_at](double t) { return a2 * (v0 - vol_at(t)); };
  p.path = "facet volume of the intersection";
  return p;
}

AutocorrProfile grid_profile(const TestFunction& f, const Vec& xi, const QuadratureSpec& spec) {
  const int n = f.dim();
  const StarBody E = f.body();
  const double R = E.circumradius();
  const int cells = n == 1 ? 8192 : 512;
  const double h = 2.0 * R / cells;
  auto occupied = std::make_shared<std::vector<Vec>>();
  if (n == 1) {
    for (int i = 0; i < cells; ++i) {
      const Vec x = vec({-R + (i + 0.5) * h});
      if (E.contains(x)) occupied->push_back(x);
    }
  } else {
    for (int i = 0; i < cells; ++i)
      for (int j = 0; j < cells; ++j) {
        const Vec x = vec({-R + (i + 0.5) * h, -R + (j + 0.5) * h});
        if (E.contains(x)) occupied->push_back(x);
      }
  }
  const double cell = std::pow(h, n);
  const double a2 = f.amplitude() * f.amplitude();
  AutocorrProfile p;
  p.xi = xi;
  p.g0 = a2 * volume(E, spec);
  p.decay = DecayKind::Compact;
  p.decay_value = 2.0 * R;
  p.g = [=](double t) {
    if (t == 0.0) return a2 * cell * static_cast<double>(occupied->size());
    double count = 0.0;
    for (const Vec& x : *occupied)
      if (E.contains(x + t * xi)) count += 1.0;
    return a2 * cell * count;
  };
  const double g0 = p.g0;
  auto g = p.g;
  p.deficit = [g0, g](double t) { return g0 - g(t); };
  p.deterministic = false;
  p.path = "grid convolution";
  return p;
}

AutocorrProfile mc_profile(const TestFunction& f, const Vec& xi, const QuadratureSpec& spec) {
  AutocorrProfile p;
  p.xi = xi;
  p.g0 = std::pow(lp_functional(f, 2.0, spec), 2.0);
  p.decay = DecayKind::Polynomial;
  p.decay_value = 0.0;
  if (auto S = f.profile().support_radius()) {
    p.decay = DecayKind::Compact;
    p.decay_value = 2.0 * *S * f.body().circumradius();
  }
  QuadratureSpec s = spec;
  s.mc_samples = std::min<std::int64_t>(spec.mc_samples, 100000);
  p.g = [f, xi, s](double t) { return autocorrelation_mc(f, t * xi, s).estimate; };
  const double g0 = p.g0;
  auto g = p.g;
  p.deficit = [g0, g](double t) { return g0 - g(t); };
  p.deterministic = false;
  p.path = "Monte Carlo";
  return p;
}

}  // namespace

double isotropic_autocorr(const Profile& h, int n, double r, const QuadratureSpec& spec) {
  if (h.kind == Profile::Kind::Step) return lens(n, r, false, spec);
  return isotropic_nested(h, n, r, false, spec);
}

double isotropic_autocorr_deficit(const Profile& h, int n, double r, const QuadratureSpec& spec) {
  if (h.kind == Profile::Kind::Step) return lens(n, r, true, spec);
  return 0.5 * isotropic_nested(h, n, r, true, spec);
}

AutocorrProfile autocorr_profile(const TestFunction& f, const Vec& xi_in, const QuadratureSpec& spec) {
  const int n = f.dim();
  require(xi_in.size() == n, "direction dimension does not match function");
  const double norm = xi_in.norm();
  if (norm == 0.0) throw Error(ErrorKind::ZeroVector, "autocorrelation direction is zero");
  require(std::abs(norm - 1.0) < 1e-9, "direction must be a unit vector");
  const Vec xi = xi_in / norm;
  using F = TestFunction::Family;
  const StarBody& K = f.body();
  const Profile::Kind hk = f.profile().kind;

  if (hk == Profile::Kind::Exponential && K.shape() == StarBody::Shape::Simplex &&
      (K.kind() == StarBody::Kind::Polytope || K.kind() == StarBody::Kind::LinearImage))
    return simplex_exponential_profile(f, xi);
  if (f.ellipsoidal()) return ellipsoidal_profile(f, xi, spec);
  if (f.family() == F::SConcaveSimplex && hk == Profile::Kind::Power && K.kind() == StarBody::Kind::Polytope &&
      K.shape() == StarBody::Shape::Simplex)
    return sconcave_profile(f, xi, spec);
  if (hk == Profile::Kind::Step) {
    if (K.axis_box()) return box_profile(f, xi);
    if (K.kind() == StarBody::Kind::LinearImage) {
      const Vec w = K.matrix().inverse() * xi;
      const double scale = w.norm();
      const double det = std::abs(K.matrix().determinant());
      const AutocorrProfile inner =
          autocorr_profile(TestFunction::indicator(K.base(), f.amplitude()), w / scale, spec);
      AutocorrProfile p = inner;
      p.xi = xi;
      p.g0 = det * inner.g0;
      p.g = [det, scale, g = inner.g](double t) { return det * g(scale * t); };
      p.deficit = [det, scale, d = inner.deficit](double t) { return det * d(scale * t); };
      if (p.decay == DecayKind::Compact) p.decay_value = inner.decay_value / scale;
      else if (p.decay == DecayKind::Exponential) p.decay_value = inner.decay_value * scale;
      for (double& b : p.breakpoints) b /= scale;
      p.path = inner.path + " through a linear image";
      return p;
    }
    if (K.kind() == StarBody::Kind::Polytope && (n == 2 || n == 3)) return facet_profile(f, xi);
    if (K.known_convex()) return chord_profile(f, xi, spec);
    if (n <= 2) return grid_profile(f, xi, spec);
  }
  return mc_profile(f, xi, spec);
}

double autocorrelation(const TestFunction& f, const Vec& y, const QuadratureSpec& spec) {
  require(y.size() == f.dim(), "shift dimension does not match function");
  const double t = y.norm();
  if (t == 0.0) return std::pow(lp_functional(f, 2.0, spec), 2.0);
  return autocorr_profile(f, y / t, spec).g(t);
}

McEstimate autocorrelation_mc(const TestFunction& f, const Vec& y, const QuadratureSpec& spec) {
  const double l1 = lp_functional(f, 1.0, spec);
  McEstimate m = mc_expectation([&](CounterRng& rng) { return f.sample(rng); },
                                [&](const Vec& x) { return f(x + y); }, spec, 0xA0C0000000ull);
  m.estimate *= l1;
  m.std_error *= l1;
  return m;
}

double l2_difference(const TestFunction& f, const Vec& y, const QuadratureSpec& spec) {
  require(y.size() == f.dim(), "shift dimension does not match function");
  const double t = y.norm();
  if (t == 0.0) return 0.0;
  return 2.0 * autocorr_profile(f, y / t, spec).deficit(t);
}

McEstimate l2_difference_mc(const TestFunction& f, const Vec& y, const QuadratureSpec& spec) {
  const double l1 = lp_functional(f, 1.0, spec);
  // x drawn from (f(x) + f(x + y)) / (2 ||f||_1)
  return mc_mean(
      [&](CounterRng& rng) {
        Vec x = f.sample(rng);
        if (rng.uniform() < 0.5) x -= y;
        const double a = f(x), b = f(x + y);
        const double q = 0.5 * (a + b) / l1;
        return q > 0.0 ? (b - a) * (b - a) / q : 0.0;
      },
      spec, 0xD1FF000000ull);
}

}  // namespace ahls
