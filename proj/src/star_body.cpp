#include "ahls/star_body.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "ahls/error.hpp"
#include "ahls/random.hpp"
#include "ahls/special.hpp"

namespace ahls {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

struct StarBody::Impl {
  Kind kind = Kind::Ball;
  Shape shape = Shape::Generic;
  int n = 0;
  std::string name;
  double r = 1.0;
  Mat A, Ainv;
  double det = 1.0;
  Mat normals;
  Vec offsets;
  std::vector<Vec> verts;
  std::optional<double> vol;
  std::optional<std::pair<Vec, Vec>> box;
  std::shared_ptr<StarBody> base;
  std::function<double(const Vec&)> rule;
  double bound = 0.0;
  bool convex = false;
  SphereGrid grid;
  std::vector<double> radii;
};

namespace {

std::vector<Vec> enumerate_vertices(const Mat& normals, const Vec& offsets) {
  const int n = static_cast<int>(normals.cols());
  const int m = static_cast<int>(normals.rows());
  std::vector<Vec> out;
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  if (m < n) return out;
  while (true) {
    Mat S(n, n);
    Vec b(n);
    for (int i = 0; i < n; ++i) {
      S.row(i) = normals.row(idx[i]);
      b(i) = offsets(idx[i]);
    }
    Eigen::FullPivLU<Mat> lu(S);
    if (lu.isInvertible()) {
      const Vec x = lu.solve(b);
      bool feasible = true;
      for (int j = 0; j < m && feasible; ++j)
        if (normals.row(j).dot(x) > offsets(j) + 1e-9 * (1.0 + std::abs(offsets(j)))) feasible = false;
      if (feasible) {
        bool dup = false;
        for (const Vec& v : out)
          if ((v - x).norm() < 1e-9) dup = true;
        if (!dup) out.push_back(x);
      }
    }
    int k = n - 1;
    while (k >= 0 && idx[k] == m - n + k) --k;
    if (k < 0) break;
    ++idx[k];
    for (int j = k + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

// x^e with the conventions 0^e = inf for e < 0 and inf^e = 0 for e < 0.
double pow_ext(double x, double e) {
  if (e == 0.0) return 1.0;
  if (x == 0.0) return e > 0.0 ? 0.0 : kInf;
  if (std::isinf(x)) return e > 0.0 ? kInf : 0.0;
  return std::pow(x, e);
}

std::optional<std::pair<double, double>> quadratic_section(const Vec& y, const Vec& e) {
  const double a = e.squaredNorm();
  const double b = y.dot(e);
  const double c = y.squaredNorm() - 1.0;
  if (a == 0.0) return std::nullopt;
  const double disc = b * b - a * c;
  if (disc <= 0.0) return std::nullopt;
  const double s = std::sqrt(disc);
  // Stable roots.
  const double q = -(b + std::copysign(s, b));
  double t1 = q / a;
  double t2 = (q != 0.0) ? c / q : -t1;
  if (t1 > t2) std::swap(t1, t2);
  return std::make_pair(t1, t2);
}

}  // namespace

StarBody StarBody::ball(int n, double r) {
  require(n >= 1, "ball dimension must be >= 1");
  require(r > 0.0 && std::isfinite(r), "ball radius must be positive and finite");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Ball;
  impl->n = n;
  impl->r = r;
  impl->A = Mat::Identity(n, n) * r;
  impl->Ainv = Mat::Identity(n, n) / r;
  impl->det = std::pow(r, n);
  impl->vol = ball_volume(n) * std::pow(r, n);
  impl->name = "ball";
  return StarBody(impl);
}

StarBody StarBody::ellipsoid(const Mat& A) {
  require(A.rows() == A.cols() && A.rows() >= 1, "ellipsoid matrix must be square");
  const double det = A.determinant();
  if (!(std::abs(det) > 0.0)) throw Error(ErrorKind::DegenerateBody, "ellipsoid matrix is singular");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Ellipsoid;
  impl->n = static_cast<int>(A.rows());
  impl->A = A;
  impl->Ainv = A.inverse();
  impl->det = std::abs(det);
  impl->vol = ball_volume(impl->n) * impl->det;
  impl->name = "ellipsoid";
  return StarBody(impl);
}

StarBody StarBody::polytope(const Mat& normals, const Vec& offsets, std::vector<Vec> vertices, std::string name) {
  require(normals.rows() == offsets.size() && normals.rows() >= 1, "polytope normals and offsets disagree");
  for (Eigen::Index i = 0; i < offsets.size(); ++i)
    require(offsets(i) >= 0.0, "polytope must contain the origin (offsets >= 0)");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Polytope;
  impl->n = static_cast<int>(normals.cols());
  impl->normals = normals;
  impl->offsets = offsets;
  impl->verts = vertices.empty() ? enumerate_vertices(normals, offsets) : std::move(vertices);
  impl->name = std::move(name);
  impl->convex = true;
  return StarBody(impl);
}

StarBody StarBody::simplex(int n) {
  require(n >= 1, "simplex dimension must be >= 1");
  Mat N = Mat::Zero(n + 1, n);
  Vec b = Vec::Zero(n + 1);
  for (int i = 0; i < n; ++i) N(i, i) = -1.0;
  N.row(n).setOnes();
  b(n) = 1.0;
  std::vector<Vec> verts{Vec::Zero(n)};
  for (int i = 0; i < n; ++i) verts.push_back(unit(n, i));
  StarBody K = polytope(N, b, verts, "simplex");
  auto impl = std::const_pointer_cast<Impl>(K.impl_);
  impl->shape = Shape::Simplex;
  impl->vol = 1.0 / factorial(n);
  return K;
}

StarBody StarBody::cross_polytope(int n) {
  require(n >= 1 && n <= 12, "cross-polytope dimension must be in [1, 12]");
  const int m = 1 << n;
  Mat N(m, n);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < n; ++i) N(k, i) = (k >> i) & 1 ? -1.0 : 1.0;
  std::vector<Vec> verts;
  for (int i = 0; i < n; ++i) {
    verts.push_back(unit(n, i));
    verts.push_back(-unit(n, i));
  }
  StarBody K = polytope(N, Vec::Ones(m), verts, "cross_polytope");
  auto impl = std::const_pointer_cast<Impl>(K.impl_);
  impl->shape = Shape::CrossPolytope;
  impl->vol = std::pow(2.0, n) / factorial(n);
  return K;
}

StarBody StarBody::cube(int n) {
  StarBody K = box(Vec::Zero(n), Vec::Ones(n));
  std::const_pointer_cast<Impl>(K.impl_)->name = "cube";
  return K;
}

StarBody StarBody::box(const Vec& lo, const Vec& hi) {
  const int n = static_cast<int>(lo.size());
  require(n >= 1 && hi.size() == n, "box bounds must have equal positive length");
  Mat N = Mat::Zero(2 * n, n);
  Vec b(2 * n);
  double vol = 1.0;
  for (int i = 0; i < n; ++i) {
    require(lo(i) <= 0.0 && hi(i) >= 0.0 && hi(i) > lo(i), "box must contain the origin");
    N(2 * i, i) = 1.0;
    b(2 * i) = hi(i);
    N(2 * i + 1, i) = -1.0;
    b(2 * i + 1) = -lo(i);
    vol *= hi(i) - lo(i);
  }
  std::vector<Vec> verts;
  for (int k = 0; k < (1 << n); ++k) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = (k >> i) & 1 ? hi(i) : lo(i);
    verts.push_back(v);
  }
  StarBody K = polytope(N, b, verts, "box");
  auto impl = std::const_pointer_cast<Impl>(K.impl_);
  impl->shape = Shape::Box;
  impl->box = std::make_pair(lo, hi);
  impl->vol = vol;
  return K;
}

StarBody StarBody::linear_image(const Mat& phi, const StarBody& body) {
  const int n = body.dim();
  require(phi.rows() == n && phi.cols() == n, "linear map dimension mismatch");
  const double det = phi.determinant();
  if (!(std::abs(det) > 0.0)) throw Error(ErrorKind::DegenerateBody, "linear map is singular");
  if (body.kind() == Kind::Ball || body.kind() == Kind::Ellipsoid) return ellipsoid(phi * body.matrix());
  if (body.kind() == Kind::LinearImage) return linear_image(phi * body.matrix(), body.base());
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::LinearImage;
  impl->n = n;
  impl->A = phi;
  impl->Ainv = phi.inverse();
  impl->det = std::abs(det);
  impl->base = std::make_shared<StarBody>(body);
  if (auto v = body.exact_volume()) impl->vol = *v * impl->det;
  for (const Vec& v : body.vertices()) impl->verts.push_back(phi * v);
  impl->convex = body.known_convex();
  impl->shape = body.shape() == Shape::Box ? Shape::Generic : body.shape();
  impl->name = "linear_image(" + body.name() + ")";
  return StarBody(impl);
}

StarBody StarBody::radial_rule(int n, std::function<double(const Vec&)> rho, double bound, std::string name,
                               bool convex) {
  require(n >= 1, "dimension must be >= 1");
  require(bound > 0.0, "radial rule bound must be positive");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::RadialRule;
  impl->n = n;
  impl->rule = std::move(rho);
  impl->bound = bound;
  impl->name = std::move(name);
  impl->convex = convex;
  return StarBody(impl);
}

StarBody StarBody::petal(double amplitude, int lobes) {
  require(std::abs(amplitude) < 1.0, "petal amplitude must lie in (-1, 1)");
  auto rule = [amplitude, lobes](const Vec& xi) {
    return 1.0 + amplitude * std::cos(lobes * std::atan2(xi(1), xi(0)));
  };
  return radial_rule(2, rule, 1.0 + std::abs(amplitude), "petal");
}

StarBody StarBody::sampled(SphereGrid grid, std::vector<double> radii, std::string name) {
  require(grid.size() == radii.size() && grid.size() >= 1, "sampled body needs one radius per direction");
  for (double r : radii) require(r >= 0.0 && !std::isnan(r), "sampled radii must be non-negative");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Sampled;
  impl->n = grid.dim;
  impl->grid = std::move(grid);
  impl->radii = std::move(radii);
  impl->name = std::move(name);
  return StarBody(impl);
}

int StarBody::dim() const { return impl_->n; }
StarBody::Kind StarBody::kind() const { return impl_->kind; }
StarBody::Shape StarBody::shape() const { return impl_->shape; }
const std::string& StarBody::name() const { return impl_->name; }

double StarBody::radial(const Vec& x) const {
  require(x.size() == impl_->n, "point dimension does not match body");
  const double norm = x.norm();
  if (norm == 0.0) throw Error(ErrorKind::ZeroVector, "radial function evaluated at the origin");
  switch (impl_->kind) {
    case Kind::Ball:
      return impl_->r / norm;
    case Kind::Ellipsoid:
      return 1.0 / (impl_->Ainv * x).norm();
    case Kind::Polytope: {
      const double g = gauge(x);
      return g == 0.0 ? kInf : 1.0 / g;
    }
    case Kind::LinearImage:
      return impl_->base->radial(impl_->Ainv * x);
    case Kind::RadialRule:
      return impl_->rule(x / norm) / norm;
    case Kind::Sampled:
      return impl_->grid.interpolate(impl_->radii, x / norm) / norm;
  }
  return 0.0;
}

double StarBody::gauge(const Vec& x) const {
  if (impl_->kind == Kind::Polytope) {
    require(x.size() == impl_->n, "point dimension does not match body");
    double g = 0.0;
    for (Eigen::Index i = 0; i < impl_->normals.rows(); ++i) {
      const double d = impl_->normals.row(i).dot(x);
      if (d <= 0.0) continue;
      const double b = impl_->offsets(i);
      if (b == 0.0) return kInf;
      g = std::max(g, d / b);
    }
    return g;
  }
  if (impl_->kind == Kind::LinearImage) return impl_->base->gauge(impl_->Ainv * x);
  if (x.norm() == 0.0) return 0.0;
  const double r = radial(x);
  if (r == 0.0) return kInf;
  return 1.0 / r;
}

bool StarBody::known_convex() const {
  switch (impl_->kind) {
    case Kind::Ball:
    case Kind::Ellipsoid:
    case Kind::Polytope:
      return true;
    default:
      return impl_->convex;
  }
}

std::optional<std::pair<double, double>> StarBody::line_section(const Vec& p, const Vec& d) const {
  switch (impl_->kind) {
    case Kind::Ball:
    case Kind::Ellipsoid:
      return quadratic_section(impl_->Ainv * p, impl_->Ainv * d);
    case Kind::Polytope: {
      double lo = -kInf, hi = kInf;
      for (Eigen::Index i = 0; i < impl_->normals.rows(); ++i) {
        const double ad = impl_->normals.row(i).dot(d);
        const double slack = impl_->offsets(i) - impl_->normals.row(i).dot(p);
        if (ad == 0.0) {
          if (slack < 0.0) return std::nullopt;
        } else if (ad > 0.0) {
          hi = std::min(hi, slack / ad);
        } else {
          lo = std::max(lo, slack / ad);
        }
      }
      if (!(lo < hi)) return std::nullopt;
      return std::make_pair(lo, hi);
    }
    case Kind::LinearImage:
      return impl_->base->line_section(impl_->Ainv * p, impl_->Ainv * d);
    default:
      break;
  }
  // Scan and bisect for bodies without an exact description.
  const double dn = d.norm();
  if (dn == 0.0) return std::nullopt;
  const double T = (circumradius() + p.norm()) / dn;
  constexpr int kScan = 2048;
  int first = -1, last = -1;
  auto inside = [&](double t) { return contains(p + t * d); };
  for (int i = 0; i <= kScan; ++i) {
    const double t = -T + 2.0 * T * i / kScan;
    if (inside(t)) {
      if (first < 0) first = i;
      last = i;
    }
  }
  if (first < 0) return std::nullopt;
  auto bisect = [&](double in, double out) {
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (in + out);
      (inside(mid) ? in : out) = mid;
    }
    return in;
  };
  const double t_first = -T + 2.0 * T * first / kScan;
  const double t_last = -T + 2.0 * T * last / kScan;
  const double lo = first == 0 ? t_first : bisect(t_first, t_first - 2.0 * T / kScan);
  const double hi = last == kScan ? t_last : bisect(t_last, t_last + 2.0 * T / kScan);
  if (!(lo < hi)) return std::nullopt;
  return std::make_pair(lo, hi);
}

std::pair<double, double> StarBody::support_interval(const Vec& u) const {
  switch (impl_->kind) {
    case Kind::Ball:
    case Kind::Ellipsoid: {
      const double h = (impl_->A.transpose() * u).norm();
      return {-h, h};
    }
    default:
      break;
  }
  if (!impl_->verts.empty()) {
    double lo = kInf, hi = -kInf;
    for (const Vec& v : impl_->verts) {
      lo = std::min(lo, v.dot(u));
      hi = std::max(hi, v.dot(u));
    }
    return {lo, hi};
  }
  const SphereGrid g = sphere_grid(impl_->n, impl_->n == 2 ? 1024 : 48);
  double lo = 0.0, hi = 0.0;
  for (const Vec& xi : g.directions) {
    const double r = radial(xi);
    lo = std::min(lo, r * xi.dot(u));
    hi = std::max(hi, r * xi.dot(u));
  }
  return {lo, hi};
}

std::vector<Vec> StarBody::vertices() const { return impl_->verts; }

double StarBody::circumradius() const {
  switch (impl_->kind) {
    case Kind::Ball:
      return impl_->r;
    case Kind::Ellipsoid: {
      Eigen::JacobiSVD<Mat> svd(impl_->A);
      return svd.singularValues()(0);
    }
    case Kind::Polytope:
    case Kind::LinearImage: {
      if (impl_->verts.empty()) {
        if (impl_->kind == Kind::LinearImage) {
          Eigen::JacobiSVD<Mat> svd(impl_->A);
          return svd.singularValues()(0) * impl_->base->circumradius();
        }
        return kInf;
      }
      double r = 0.0;
      for (const Vec& v : impl_->verts) r = std::max(r, v.norm());
      return r;
    }
    case Kind::RadialRule:
      return impl_->bound;
    case Kind::Sampled:
      return *std::max_element(impl_->radii.begin(), impl_->radii.end());
  }
  return kInf;
}

std::optional<double> StarBody::exact_volume() const { return impl_->vol; }

const Mat& StarBody::matrix() const { return impl_->A; }
const Mat& StarBody::normals() const { return impl_->normals; }
const Vec& StarBody::offsets() const { return impl_->offsets; }

const StarBody& StarBody::base() const {
  require(impl_->base != nullptr, "body is not a linear image");
  return *impl_->base;
}

std::optional<std::pair<Vec, Vec>> StarBody::axis_box() const { return impl_->box; }
const SphereGrid& StarBody::grid() const { return impl_->grid; }
const std::vector<double>& StarBody::radii() const { return impl_->radii; }

Vec StarBody::sample_uniform(CounterRng& rng) const {
  const int n = impl_->n;
  switch (impl_->kind) {
    case Kind::Ball:
    case Kind::Ellipsoid: {
      const Vec dir = rng.unit_vector(n);
      return impl_->A * (dir * std::pow(rng.uniform(), 1.0 / n));
    }
    case Kind::LinearImage:
      return impl_->A * impl_->base->sample_uniform(rng);
    default:
      break;
  }
  if (impl_->shape == Shape::Simplex || impl_->shape == Shape::CrossPolytope) {
    Vec e(n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += (e(i) = rng.exponential());
    sum += rng.exponential();
    Vec x = e / sum;
    if (impl_->shape == Shape::CrossPolytope)
      for (int i = 0; i < n; ++i)
        if (rng.uniform() < 0.5) x(i) = -x(i);
    return x;
  }
  if (impl_->box) {
    Vec x(n);
    for (int i = 0; i < n; ++i) x(i) = impl_->box->first(i) + rng.uniform() * (impl_->box->second(i) - impl_->box->first(i));
    return x;
  }
  Vec lo = Vec::Constant(n, -circumradius()), hi = Vec::Constant(n, circumradius());
  if (!impl_->verts.empty()) {
    for (int i = 0; i < n; ++i) {
      auto [a, b] = support_interval(unit(n, i));
      lo(i) = a;
      hi(i) = b;
    }
  }
  for (int attempt = 0; attempt < 10'000'000; ++attempt) {
    Vec x(n);
    for (int i = 0; i < n; ++i) x(i) = lo(i) + rng.uniform() * (hi(i) - lo(i));
    if (contains(x)) return x;
  }
  throw Error(ErrorKind::DegenerateBody, "rejection sampling found no interior point");
}

std::vector<double> radial_values(const StarBody& K, const SphereGrid& grid) {
  if (K.kind() == StarBody::Kind::Sampled && K.grid().same_layout(grid)) return K.radii();
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = K.radial(grid.directions[i]);
  return out;
}

double polytope_volume(const Mat& normals, const Vec& offsets) {
  const int n = static_cast<int>(normals.cols());
  const int m = static_cast<int>(normals.rows());
  require(n == 2 || n == 3, "polytope_volume supports dimensions 2 and 3");
  auto feasible = [&](const Vec& x) {
    for (int j = 0; j < m; ++j)
      if (normals.row(j).dot(x) > offsets(j) + 1e-12 * (1.0 + std::abs(offsets(j)))) return false;
    return true;
  };
  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    const Vec a = normals.row(i).transpose();
    const double an = a.norm();
    if (an == 0.0) continue;
    std::vector<Vec> pts;
    if (n == 2) {
      for (int j = 0; j < m; ++j) {
        if (j == i) continue;
        Mat S(2, 2);
        S.row(0) = normals.row(i);
        S.row(1) = normals.row(j);
        if (std::abs(S.determinant()) < 1e-14 * an * normals.row(j).norm()) continue;
        const Vec x = S.partialPivLu().solve(vec({offsets(i), offsets(j)}));
        if (feasible(x)) pts.push_back(x);
      }
      if (pts.size() < 2) continue;
      const Vec dir = vec({-a(1), a(0)}) / an;
      double lo = kInf, hi = -kInf;
      for (const Vec& x : pts) {
        lo = std::min(lo, dir.dot(x));
        hi = std::max(hi, dir.dot(x));
      }
      total += offsets(i) / an * (hi - lo) / 2.0;
      continue;
    }
    for (int j = 0; j < m; ++j)
      for (int k = j + 1; k < m; ++k) {
        if (j == i || k == i) continue;
        Mat S(3, 3);
        S.row(0) = normals.row(i);
        S.row(1) = normals.row(j);
        S.row(2) = normals.row(k);
        if (std::abs(S.determinant()) < 1e-14 * an * normals.row(j).norm() * normals.row(k).norm()) continue;
        const Vec x = S.partialPivLu().solve(vec({offsets(i), offsets(j), offsets(k)}));
        if (feasible(x)) pts.push_back(x);
      }
    if (pts.size() < 3) continue;
    const Vec u = a / an;
    Vec e1 = std::abs(u(0)) < 0.9 ? unit(3, 0) : unit(3, 1);
    e1 -= e1.dot(u) * u;
    e1.normalize();
    const Eigen::Vector3d e2 = Eigen::Vector3d(u).cross(Eigen::Vector3d(e1));
    Vec c = Vec::Zero(3);
    for (const Vec& x : pts) c += x;
    c /= static_cast<double>(pts.size());
    std::vector<std::pair<double, std::pair<double, double>>> polar;
    for (const Vec& x : pts) {
      const Vec d = x - c;
      const double px = e1.dot(d), py = e2.dot(Eigen::Vector3d(d));
      polar.push_back({std::atan2(py, px), {px, py}});
    }
    std::sort(polar.begin(), polar.end());
    double area = 0.0;
    for (std::size_t q = 0; q < polar.size(); ++q) {
      const auto& [x1, y1] = polar[q].second;
      const auto& [x2, y2] = polar[(q + 1) % polar.size()].second;
      area += x1 * y2 - x2 * y1;
    }
    total += offsets(i) / an * std::abs(area) / 2.0 / 3.0;
  }
  return total;
}

double volume(const StarBody& K, const QuadratureSpec& spec) {
  if (auto v = K.exact_volume()) return *v;
  const int n = K.dim();
  double value;
  if (K.kind() == StarBody::Kind::Sampled) {
    std::vector<double> p(K.radii().size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::pow(K.radii()[i], n) / n;
    value = K.grid().integrate(p);
  } else {
    value = integrate_sphere([&](const Vec& xi) { return std::pow(K.radial(xi), n) / n; }, n, spec);
  }
  if (!std::isfinite(value)) throw Error(ErrorKind::NonFinite, "volume is not finite");
  return value;
}

DualMixedVolumeValue dual_mixed_volume(const StarBody& K, const StarBody& L, double alpha, const QuadratureSpec& spec) {
  const int n = K.dim();
  require(L.dim() == n, "bodies must share the dimension");
  require(alpha != 0.0 && alpha != static_cast<double>(n), "alpha must differ from 0 and n");
  bool infinite = false;
  auto term = [&](double rk, double rl) {
    const double a = pow_ext(rk, n - alpha);
    const double b = pow_ext(rl, alpha);
    if ((a == 0.0 && std::isinf(b)) || (b == 0.0 && std::isinf(a)) || std::isnan(a) || std::isnan(b))
      throw Error(ErrorKind::NonFinite, "dual mixed volume integrand is undefined (0 * inf)");
    const double v = a * b;
    if (std::isinf(v)) {
      infinite = true;
      return 0.0;
    }
    return v / n;
  };
  double value;
  const bool k_sampled = K.kind() == StarBody::Kind::Sampled;
  const bool l_sampled = L.kind() == StarBody::Kind::Sampled;
  if (k_sampled || l_sampled || n > 3) {
    const SphereGrid grid = k_sampled ? K.grid() : l_sampled ? L.grid() : sphere_grid(n, spec.sphere_resolution);
    const std::vector<double> rk = radial_values(K, grid);
    const std::vector<double> rl = radial_values(L, grid);
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = term(rk[i], rl[i]);
    value = grid.integrate(v);
  } else {
    value = integrate_sphere([&](const Vec& xi) { return term(K.radial(xi), L.radial(xi)); }, n, spec);
  }
  if (infinite) return {std::numeric_limits<double>::infinity(), alpha, false};
  return {value, alpha, true};
}

StarBody schwarz_symmetral_body(const StarBody& K, const QuadratureSpec& spec) {
  const int n = K.dim();
  const double v = volume(K, spec);
  if (!(v > 0.0)) throw Error(ErrorKind::DegenerateBody, "body has zero volume");
  return StarBody::ball(n, std::pow(v / ball_volume(n), 1.0 / n));
}

bool is_dilate(const StarBody& K, const StarBody& L, double tol) {
  require(K.dim() == L.dim(), "bodies must share the dimension");
  const SphereGrid grid = K.kind() == StarBody::Kind::Sampled   ? K.grid()
                          : L.kind() == StarBody::Kind::Sampled ? L.grid()
                                                                : sphere_grid(K.dim(), 64);
  const std::vector<double> rk = radial_values(K, grid);
  const std::vector<double> rl = radial_values(L, grid);
  constexpr double kTiny = 1e-12;
  std::vector<std::pair<double, double>> ratios;
  double total = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (rk[i] < kTiny && rl[i] < kTiny) continue;
    if (rl[i] < kTiny || std::isinf(rk[i]) || std::isinf(rl[i])) return false;
    ratios.emplace_back(rk[i] / rl[i], grid.weights[i]);
    total += grid.weights[i];
  }
  if (ratios.empty()) return true;
  std::sort(ratios.begin(), ratios.end());
  double c = ratios.back().first, acc = 0.0;
  for (const auto& [ratio, w] : ratios) {
    acc += w;
    if (acc >= 0.5 * total) {
      c = ratio;
      break;
    }
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (rk[i] < kTiny && rl[i] < kTiny) continue;
    const double scale = std::max(rk[i], c * rl[i]);
    if (std::abs(rk[i] - c * rl[i]) > tol * scale) return false;
  }
  return true;
}

bool convexity_check(const StarBody& K, const QuadratureSpec& spec, double tol) {
  (void)spec;
  const int n = K.dim();
  if (tol < 0.0) tol = K.kind() == StarBody::Kind::Sampled ? 2e-3 : 1e-9;
  if (n == 1) return std::isfinite(K.radial(vec({1.0}))) && std::isfinite(K.radial(vec({-1.0})));
  SphereGrid grid;
  if (n == 2) {
    grid = (K.kind() == StarBody::Kind::Sampled && K.grid().size() <= 1024) ? K.grid() : sphere_grid(2, 256);
  } else if (n == 3) {
    grid = sphere_grid(3, 12);
  } else {
    grid = sphere_grid(n, 2);
    if (grid.size() > 256) grid.directions.resize(256);
  }
  std::vector<Vec> boundary;
  for (const Vec& xi : grid.directions) {
    const double r = K.radial(xi);
    if (r > 0.0 && std::isfinite(r)) boundary.push_back(r * xi);
  }
  for (std::size_t i = 0; i < boundary.size(); ++i)
    for (std::size_t j = i + 1; j < boundary.size(); ++j) {
      const Vec mid = 0.5 * (boundary[i] + boundary[j]);
      if (mid.norm() < 1e-14) continue;
      if (K.gauge(mid) > 1.0 + tol) return false;
    }
  return true;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

void write_radial_csv(std::ostream& out, const SphereGrid& grid, const std::vector<double>& radii) {
  require(grid.size() == radii.size(), "radius count does not match grid");
  for (int k = 0; k < grid.dim; ++k) out << "dir_" << (k + 1) << ",";
  out << "rho\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (int k = 0; k < grid.dim; ++k) out << format_double(grid.directions[i](k)) << ",";
    out << format_double(radii[i]) << "\n";
  }
}

}  // namespace ahls
