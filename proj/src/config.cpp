#include "ahls/config.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "ahls/hls_body.hpp"
#include "ahls/radial_mean.hpp"
#include "ahls/random.hpp"
#include "ahls/verify.hpp"

namespace ahls {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Line of every value in the source text, keyed by field path.
class PositionMap {
 public:
  explicit PositionMap(const std::string& text) : text_(text) {
    std::size_t pos = 0;
    value(pos, "");
  }

  int line(const std::string& path) const {
    std::string p = path;
    while (true) {
      auto it = lines_.find(p);
      if (it != lines_.end()) return it->second;
      if (p.empty()) return 0;
      const std::size_t cut = p.find_last_of(".[");
      p = cut == std::string::npos ? "" : p.substr(0, cut);
    }
  }

 private:
  void ws(std::size_t& pos) {
    while (pos < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos]))) {
      if (text_[pos] == '\n') ++line_;
      ++pos;
    }
  }
  std::string string(std::size_t& pos) {
    std::string out;
    ++pos;
    while (pos < text_.size() && text_[pos] != '"') {
      if (text_[pos] == '\\') ++pos;
      if (pos < text_.size()) out += text_[pos++];
    }
    ++pos;
    return out;
  }
  void value(std::size_t& pos, const std::string& path) {
    ws(pos);
    if (pos >= text_.size()) return;
    lines_.emplace(path, line_);
    const char c = text_[pos];
    if (c == '{') {
      ++pos;
      while (true) {
        ws(pos);
        if (pos >= text_.size() || text_[pos] == '}') break;
        if (text_[pos] == ',') {
          ++pos;
          continue;
        }
        const int key_line = line_;
        const std::string key = string(pos);
        const std::string child = path.empty() ? key : path + "." + key;
        ws(pos);
        if (pos < text_.size() && text_[pos] == ':') ++pos;
        lines_.emplace(child, key_line);
        value(pos, child);
      }
      ++pos;
    } else if (c == '[') {
      ++pos;
      int index = 0;
      while (true) {
        ws(pos);
        if (pos >= text_.size() || text_[pos] == ']') break;
        if (text_[pos] == ',') {
          ++pos;
          continue;
        }
        value(pos, path + "[" + std::to_string(index++) + "]");
      }
      ++pos;
    } else if (c == '"') {
      string(pos);
    } else {
      while (pos < text_.size() && !std::strchr(",]}", text_[pos]) &&
             !std::isspace(static_cast<unsigned char>(text_[pos])))
        ++pos;
    }
  }

  const std::string& text_;
  int line_ = 1;
  std::map<std::string, int> lines_;
};

struct Ctx {
  const PositionMap* positions = nullptr;

  [[noreturn]] void fail(const std::string& at, const std::string& msg) const {
    throw ConfigError(positions ? positions->line(at) : 0, at, msg);
  }
};

std::string join(const std::string& at, const std::string& key) { return at.empty() ? key : at + "." + key; }
std::string index(const std::string& at, std::size_t i) { return at + "[" + std::to_string(i) + "]"; }

const ojson& field(const ojson& j, const std::string& key, const Ctx& c, const std::string& at) {
  if (!j.is_object()) c.fail(at, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) c.fail(join(at, key), "missing required field");
  return *it;
}

double as_number(const ojson& j, const Ctx& c, const std::string& at) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return kInf;
  }
  c.fail(at, "expected a number");
}

double number(const ojson& j, const std::string& key, const Ctx& c, const std::string& at) {
  return as_number(field(j, key, c, at), c, join(at, key));
}

double number_or(const ojson& j, const std::string& key, double fallback, const Ctx& c, const std::string& at) {
  if (!j.contains(key)) return fallback;
  return number(j, key, c, at);
}

int integer(const ojson& j, const std::string& key, const Ctx& c, const std::string& at) {
  const ojson& v = field(j, key, c, at);
  if (!v.is_number_integer()) c.fail(join(at, key), "expected an integer");
  return v.get<int>();
}

std::string text(const ojson& j, const std::string& key, const Ctx& c, const std::string& at) {
  const ojson& v = field(j, key, c, at);
  if (!v.is_string()) c.fail(join(at, key), "expected a string");
  return v.get<std::string>();
}

std::vector<double> numbers(const ojson& j, const Ctx& c, const std::string& at) {
  if (!j.is_array()) c.fail(at, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_number(j[i], c, index(at, i)));
  return out;
}

Vec vector_field(const ojson& j, const Ctx& c, const std::string& at) {
  const std::vector<double> v = numbers(j, c, at);
  if (v.empty()) c.fail(at, "vector must not be empty");
  return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Mat matrix_field(const ojson& j, const Ctx& c, const std::string& at) {
  if (!j.is_array() || j.empty()) c.fail(at, "expected a non-empty array of rows");
  const std::size_t rows = j.size();
  Mat m;
  for (std::size_t i = 0; i < rows; ++i) {
    const Vec row = vector_field(j[i], c, index(at, i));
    if (i == 0) m.resize(static_cast<Eigen::Index>(rows), row.size());
    if (row.size() != m.cols()) c.fail(index(at, i), "rows must have equal length");
    m.row(static_cast<Eigen::Index>(i)) = row.transpose();
  }
  return m;
}

template <class F>
auto guarded(const Ctx& c, const std::string& at, F&& build) {
  try {
    return build();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    c.fail(at, e.what());
  }
}

StarBody body_at(const ojson& j, const Ctx& c, const std::string& at) {
  const std::string type = text(j, "type", c, at);
  return guarded(c, at, [&]() -> StarBody {
    if (type == "ball") return StarBody::ball(integer(j, "n", c, at), number_or(j, "radius", 1.0, c, at));
    if (type == "ellipsoid") return StarBody::ellipsoid(matrix_field(field(j, "matrix", c, at), c, join(at, "matrix")));
    if (type == "simplex") return StarBody::simplex(integer(j, "n", c, at));
    if (type == "cross_polytope") return StarBody::cross_polytope(integer(j, "n", c, at));
    if (type == "cube") return StarBody::cube(integer(j, "n", c, at));
    if (type == "box")
      return StarBody::box(vector_field(field(j, "lo", c, at), c, join(at, "lo")),
                           vector_field(field(j, "hi", c, at), c, join(at, "hi")));
    if (type == "polytope")
      return StarBody::polytope(matrix_field(field(j, "normals", c, at), c, join(at, "normals")),
                                vector_field(field(j, "offsets", c, at), c, join(at, "offsets")));
    if (type == "petal") return StarBody::petal(number(j, "amplitude", c, at), integer(j, "lobes", c, at));
    if (type == "linear_image")
      return StarBody::linear_image(matrix_field(field(j, "map", c, at), c, join(at, "map")),
                                    body_at(field(j, "body", c, at), c, join(at, "body")));
    c.fail(join(at, "type"), "unknown body type '" + type + "'");
  });
}

Profile profile_at(const ojson& j, const Ctx& c, const std::string& at) {
  const std::string kind = text(j, "kind", c, at);
  if (kind == "exponential") return Profile::exponential();
  if (kind == "cauchy") return Profile::cauchy(number(j, "beta", c, at));
  if (kind == "power") return Profile::power(number(j, "s", c, at));
  if (kind == "step") return Profile::step();
  if (kind == "gaussian") return Profile::custom([](double r) { return std::exp(-r * r); }, std::nullopt, "gaussian");
  c.fail(join(at, "kind"), "unknown profile kind '" + kind + "'");
}

TestFunction function_at(const ojson& j, const Ctx& c, const std::string& at) {
  const std::string family = text(j, "family", c, at);
  const double a = number_or(j, "a", 1.0, c, at);
  return guarded(c, at, [&]() -> TestFunction {
    if (family == "hls_extremal") {
      const int n = integer(j, "n", c, at);
      std::optional<Mat> phi;
      std::optional<Vec> x0;
      if (j.contains("phi")) phi = matrix_field(j["phi"], c, join(at, "phi"));
      if (j.contains("x0")) x0 = vector_field(j["x0"], c, join(at, "x0"));
      return TestFunction::hls_extremal(n, number(j, "alpha", c, at), a, phi, x0);
    }
    if (family == "simplex_exponential") {
      const int n = integer(j, "n", c, at);
      std::optional<Mat> M;
      std::optional<Vec> x0;
      if (j.contains("M")) M = matrix_field(j["M"], c, join(at, "M"));
      if (j.contains("x0")) x0 = vector_field(j["x0"], c, join(at, "x0"));
      return TestFunction::simplex_exponential(n, a, x0, M);
    }
    if (family == "sconcave_simplex")
      return TestFunction::sconcave_simplex(integer(j, "n", c, at), number(j, "s", c, at), a);
    if (family == "indicator") return TestFunction::indicator(body_at(field(j, "body", c, at), c, join(at, "body")), a);
    if (family == "custom_radial")
      return TestFunction::custom_radial(integer(j, "n", c, at),
                                         profile_at(field(j, "profile", c, at), c, join(at, "profile")), a,
                                         number_or(j, "radius", 1.0, c, at));
    c.fail(join(at, "family"), "unknown function family '" + family + "'");
  });
}

QuadratureSpec quadrature_at(const ojson& j, QuadratureSpec q, const Ctx& c, const std::string& at) {
  if (!j.is_object()) c.fail(at, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    const std::string path = join(at, key);
    if (key == "radial_nodes") q.radial_nodes = integer(j, key, c, at);
    else if (key == "tail_cut") q.tail_cut = number(j, key, c, at);
    else if (key == "sphere_resolution") q.sphere_resolution = integer(j, key, c, at);
    else if (key == "mc_samples") {
      if (!it->is_number_integer()) c.fail(path, "expected an integer");
      q.mc_samples = it->get<std::int64_t>();
    } else if (key == "seed") {
      if (!it->is_number_unsigned() && !it->is_number_integer()) c.fail(path, "expected an unsigned integer");
      q.seed = it->get<std::uint64_t>();
    } else if (key == "rel_tol") q.rel_tol = number(j, key, c, at);
    else if (key == "abs_tol") q.abs_tol = number(j, key, c, at);
    else if (key == "max_panels") q.max_panels = integer(j, key, c, at);
    else c.fail(path, "unknown quadrature field");
  }
  guarded(c, at, [&] {
    q.validate();
    return 0;
  });
  return q;
}

ojson quadrature_json(const QuadratureSpec& q) {
  return {{"radial_nodes", q.radial_nodes}, {"tail_cut", q.tail_cut},   {"sphere_resolution", q.sphere_resolution},
          {"mc_samples", q.mc_samples},     {"seed", q.seed},           {"rel_tol", q.rel_tol},
          {"abs_tol", q.abs_tol},           {"max_panels", q.max_panels}};
}

Mat random_shear(int n, std::uint64_t seed) {
  CounterRng rng(seed, 0x5EA5000000ull);
  Mat S = Mat::Identity(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) S(i, j) = 2.0 * rng.uniform() - 1.0;
  return S;
}

double default_s(const TestFunction& f, const ojson& p, const Ctx& c, const std::string& at) {
  if (p.contains("s")) return number(p, "s", c, at);
  switch (f.family()) {
    case TestFunction::Family::SimplexExponential: return 0.0;
    case TestFunction::Family::SConcaveSimplex: return f.s();
    case TestFunction::Family::Indicator: return kInf;
    default: c.fail(join(at, "s"), "concavity class s is required for this family");
  }
}

QuadratureSpec check_quadrature(const ojson& p, const QuadratureSpec& base, const Ctx& c, const std::string& at) {
  if (!p.contains("quadrature")) return base;
  return quadrature_at(p["quadrature"], base, c, join(at, "quadrature"));
}

// Builds and, when run is true, executes one check.
std::vector<InequalityReport> dispatch(const CheckSpec& check, const QuadratureSpec& base, const Ctx& c,
                                       const std::string& at, bool run) {
  const ojson& p = check.params;
  const std::string& name = check.name;
  const QuadratureSpec q = check_quadrature(p, base, c, at);
  auto fn = [&] { return function_at(field(p, "function", c, at), c, join(at, "function")); };
  auto alpha = [&] { return number(p, "alpha", c, at); };
  auto one = [](InequalityReport r) { return std::vector<InequalityReport>{std::move(r)}; };

  if (name == "gamma_constant") {
    const int n = integer(p, "n", c, at);
    const double a = alpha();
    std::optional<double> expected;
    if (p.contains("expected")) expected = number(p, "expected", c, at);
    if (n < 1) c.fail(join(at, "n"), "n must be at least 1");
    if (!(a > 0.0)) c.fail(join(at, "alpha"), "alpha must be positive");
    return run ? one(check_gamma_constant(n, a, expected)) : std::vector<InequalityReport>{};
  }
  if (name == "continuation") {
    const auto alphas = numbers(field(p, "alphas", c, at), c, join(at, "alphas"));
    const auto s = p.contains("s") ? numbers(p["s"], c, join(at, "s")) : std::vector<double>{};
    return run ? one(check_continuation(alphas, s, q)) : std::vector<InequalityReport>{};
  }
  if (name == "bridge") {
    const StarBody E = body_at(field(p, "body", c, at), c, join(at, "body"));
    const double a = alpha();
    const int res = p.contains("resolution") ? integer(p, "resolution", c, at) : 64;
    if (!(a > -1.0) || a == 0.0) c.fail(join(at, "alpha"), "bridge needs alpha in (-1, 0) or alpha > 0");
    return run ? one(bridge_check(E, a, sphere_grid(E.dim(), res), q)) : std::vector<InequalityReport>{};
  }

  const TestFunction f = fn();
  const int n = f.dim();
  if (name == "ahls_low" || name == "ahls_high") {
    const double a = alpha();
    const bool low = name == "ahls_low";
    if (low ? !(a > 0.0 && a < n) : !(a > n)) c.fail(join(at, "alpha"), low ? "needs 0 < alpha < n" : "needs alpha > n");
    if (!run) return {};
    return one(low ? verify_ahls_low(f, a, q) : verify_ahls_high(f, a, q));
  }
  if (name == "reverse_logconcave") {
    const double a = alpha();
    const std::string variant = p.contains("variant") ? text(p, "variant", c, at) : "hls";
    const std::string path = p.contains("path") ? text(p, "path", c, at) : "closed_form";
    if (variant != "hls" && variant != "polar") c.fail(join(at, "variant"), "variant must be hls or polar");
    if (path != "closed_form" && path != "quadrature") c.fail(join(at, "path"), "path must be closed_form or quadrature");
    if (variant == "polar" && !(a > 0.0 && a < 0.5)) c.fail(join(at, "alpha"), "polar variant needs 0 < alpha < 1/2");
    if (!(a > 0.0)) c.fail(join(at, "alpha"), "alpha must be positive");
    if (!run) return {};
    HlsOptions options;
    if (path == "quadrature") options = {false, false};
    return one(verify_reverse_logconcave(f, a, q, variant == "hls" ? ReverseVariant::Hls : ReverseVariant::Polar,
                                         options));
  }
  if (name == "inclusion") {
    const auto alphas = numbers(field(p, "alphas", c, at), c, join(at, "alphas"));
    for (std::size_t i = 0; i < alphas.size(); ++i)
      if (!(alphas[i] > -1.0)) c.fail(index(join(at, "alphas"), i), "alpha must exceed -1");
    const double s = default_s(f, p, c, at);
    std::optional<std::vector<Vec>> dirs;
    if (p.contains("directions")) {
      const ojson& d = p["directions"];
      if (!d.is_array() || d.empty()) c.fail(join(at, "directions"), "expected a non-empty array of vectors");
      dirs.emplace();
      for (std::size_t i = 0; i < d.size(); ++i) {
        Vec v = vector_field(d[i], c, index(join(at, "directions"), i));
        if (v.size() != n || v.norm() == 0.0) c.fail(index(join(at, "directions"), i), "bad direction");
        dirs->push_back(v);
      }
    }
    return run ? one(verify_inclusion(f, alphas, s, q, dirs)) : std::vector<InequalityReport>{};
  }
  if (name == "sconcave_corollaries") {
    const double a = alpha();
    std::optional<double> s;
    if (p.contains("s")) s = number(p, "s", c, at);
    return run ? verify_sconcave_corollaries(f, a, q, s) : std::vector<InequalityReport>{};
  }
  if (name == "rearrangement") {
    const double a = alpha();
    if (!(a > 0.0) || a == n) c.fail(join(at, "alpha"), "needs 0 < alpha != n");
    return run ? one(verify_rearrangement_monotonicity(f, a, q)) : std::vector<InequalityReport>{};
  }
  if (name == "volume_identity") {
    const std::string which = text(p, "construct", c, at);
    if (which != "H" && which != "R") c.fail(join(at, "construct"), "construct must be H or R");
    return run ? one(check_volume_identity(f, which == "H" ? VolumeIdentity::H : VolumeIdentity::R, q))
               : std::vector<InequalityReport>{};
  }
  if (name == "autocorrelation_mc") {
    const ojson& s = field(p, "shifts", c, at);
    if (!s.is_array() || s.empty()) c.fail(join(at, "shifts"), "expected a non-empty array of vectors");
    std::vector<Vec> shifts;
    for (std::size_t i = 0; i < s.size(); ++i) {
      shifts.push_back(vector_field(s[i], c, index(join(at, "shifts"), i)));
      if (shifts.back().size() != n) c.fail(index(join(at, "shifts"), i), "shift dimension does not match");
    }
    const double tol = number_or(p, "rel_tol", 2e-2, c, at);
    return run ? one(check_autocorrelation_mc(f, shifts, q, tol)) : std::vector<InequalityReport>{};
  }
  if (name == "affine_invariance") {
    const double a = alpha();
    Mat S;
    if (p.contains("map")) S = matrix_field(p["map"], c, join(at, "map"));
    else S = random_shear(n, q.seed);
    if (S.rows() != n || S.cols() != n) c.fail(join(at, "map"), "map must be n x n");
    if (std::abs(std::abs(S.determinant()) - 1.0) > 1e-12) c.fail(join(at, "map"), "map must preserve volume");
    const TestFunction g = guarded(c, at, [&] { return compose_linear(f, S); });
    return run ? one(check_affine_invariance(f, g, a, q)) : std::vector<InequalityReport>{};
  }
  if (name == "convexity") {
    const double a = alpha();
    if (!(a > 0.0)) c.fail(join(at, "alpha"), "alpha must be positive");
    return run ? one(check_convexity(f, a, q)) : std::vector<InequalityReport>{};
  }
  if (name == "zeta") {
    const Vec xi = vector_field(field(p, "direction", c, at), c, join(at, "direction"));
    if (xi.size() != n || xi.norm() == 0.0) c.fail(join(at, "direction"), "bad direction");
    const auto alphas = numbers(field(p, "alphas", c, at), c, join(at, "alphas"));
    return run ? one(check_zeta(f, xi, alphas, q)) : std::vector<InequalityReport>{};
  }
  c.fail(join(at, "check"), "unknown check '" + name + "'");
}

RunConfig parse_with(const ojson& root, const Ctx& c) {
  if (!root.is_object()) c.fail("", "top level must be an object");
  RunConfig cfg;
  for (auto it = root.begin(); it != root.end(); ++it) {
    const std::string& key = it.key();
    if (key == "name") cfg.name = text(root, key, c, "");
    else if (key == "quadrature") cfg.quadrature = quadrature_at(*it, cfg.quadrature, c, key);
    else if (key == "output") {
      if (!it->is_object()) c.fail(key, "expected an object");
      for (auto o = it->begin(); o != it->end(); ++o) {
        if (o.key() == "report") cfg.report_path = text(*it, "report", c, key);
        else c.fail(join(key, o.key()), "unknown output field");
      }
    } else if (key != "checks") {
      c.fail(key, "unknown top-level field");
    }
  }
  const ojson& checks = field(root, "checks", c, "");
  if (!checks.is_array()) c.fail("checks", "expected an array");
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const std::string at = index("checks", i);
    CheckSpec spec;
    spec.name = text(checks[i], "check", c, at);
    spec.params = checks[i];
    spec.params.erase("check");
    dispatch(spec, cfg.quadrature, c, at, false);
    cfg.checks.push_back(std::move(spec));
  }
  return cfg;
}

std::string fmt(double x) {
  if (std::isnan(x)) return "-";
  return format_double(x);
}

}  // namespace

ConfigError::ConfigError(int line, std::string field, const std::string& what)
    : Error(ErrorKind::ConfigError,
            "line " + std::to_string(line) + ", field '" + field + "': " + what),
      line_(line),
      field_(std::move(field)) {}

RunConfig parse_config(const std::string& text) {
  ojson root;
  try {
    root = ojson::parse(text);
  } catch (const ojson::parse_error& e) {
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(end), '\n'));
    throw ConfigError(line, "", std::string("malformed JSON: ") + e.what());
  }
  const PositionMap positions(text);
  return parse_with(root, Ctx{&positions});
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

ojson to_json(const RunConfig& config) {
  ojson j;
  j["name"] = config.name;
  j["quadrature"] = quadrature_json(config.quadrature);
  if (!config.report_path.empty()) j["output"] = {{"report", config.report_path}};
  ojson checks = ojson::array();
  for (const CheckSpec& c : config.checks) {
    ojson item;
    item["check"] = c.name;
    for (auto it = c.params.begin(); it != c.params.end(); ++it) item[it.key()] = *it;
    checks.push_back(std::move(item));
  }
  j["checks"] = std::move(checks);
  return j;
}

RunConfig preset_config(const std::string& name) {
  if (name != "paper-desk-scale") throw ConfigError(0, "preset", "unknown preset '" + name + "'");
  const ojson unit_interval = {{"family", "indicator"}, {"body", {{"type", "cube"}, {"n", 1}}}};
  const ojson unit_square = {{"family", "indicator"}, {"body", {{"type", "cube"}, {"n", 2}}}};
  const ojson disk = {{"family", "indicator"}, {"body", {{"type", "ball"}, {"n", 2}}}};
  auto sexp = [](int n) { return ojson{{"family", "simplex_exponential"}, {"n", n}}; };
  auto extremal = [](int n, double a) { return ojson{{"family", "hls_extremal"}, {"n", n}, {"alpha", a}}; };
  const ojson alphas = {-0.5, 0.0, 0.5, 1.0, 2.0};

  ojson checks = ojson::array();
  for (int n = 1; n <= 5; ++n)
    checks.push_back({{"check", "gamma_constant"}, {"n", n}, {"alpha", n}, {"expected", 1.0}});
  checks.push_back({{"check", "gamma_constant"},
                    {"n", 1},
                    {"alpha", 0.5},
                    {"expected", std::tgamma(0.25) / std::tgamma(0.75)}});
  checks.push_back({{"check", "ahls_low"}, {"function", unit_interval}, {"alpha", 0.5}});
  checks.push_back({{"check", "ahls_low"}, {"function", extremal(1, 0.5)}, {"alpha", 0.5}});
  checks.push_back({{"check", "ahls_low"}, {"function", extremal(2, 1.0)}, {"alpha", 1.0}});
  checks.push_back({{"check", "affine_invariance"}, {"function", extremal(2, 1.0)}, {"alpha", 1.0}});
  checks.push_back({{"check", "ahls_high"}, {"function", unit_interval}, {"alpha", 2.0}});
  checks.push_back({{"check", "ahls_high"}, {"function", extremal(1, 2.0)}, {"alpha", 2.0}});
  for (int n = 1; n <= 3; ++n) {
    ojson shifts = ojson::array();
    for (int k = 1; k <= 5; ++k) {
      ojson y = ojson::array();
      for (int i = 0; i < n; ++i) y.push_back(0.25 * k * (i % 2 == 0 ? 1.0 : -0.5));
      shifts.push_back(y);
    }
    checks.push_back({{"check", "autocorrelation_mc"}, {"function", sexp(n)}, {"shifts", shifts}});
  }
  for (double a : {0.25, 0.5, 0.75})
    for (const char* path : {"closed_form", "quadrature"})
      checks.push_back({{"check", "reverse_logconcave"}, {"function", sexp(1)}, {"alpha", a}, {"path", path}});
  checks.push_back({{"check", "reverse_logconcave"}, {"function", sexp(1)}, {"alpha", 0.25}, {"variant", "polar"}});
  checks.push_back({{"check", "reverse_logconcave"}, {"function", unit_square}, {"alpha", 1.0}});
  for (const char* which : {"H", "R"}) {
    checks.push_back({{"check", "volume_identity"}, {"function", unit_square}, {"construct", which}});
    checks.push_back({{"check", "volume_identity"}, {"function", sexp(1)}, {"construct", which}});
    checks.push_back({{"check", "volume_identity"}, {"function", sexp(2)}, {"construct", which}});
  }
  for (double a : {0.5, 1.0, 2.0})
    checks.push_back({{"check", "bridge"}, {"body", {{"type", "cube"}, {"n", 2}}}, {"alpha", a}, {"resolution", 64}});
  checks.push_back({{"check", "bridge"}, {"body", {{"type", "cube"}, {"n", 1}}}, {"alpha", -0.5}});
  checks.push_back({{"check", "inclusion"}, {"function", sexp(1)}, {"alphas", alphas}});
  checks.push_back({{"check", "inclusion"}, {"function", sexp(2)}, {"alphas", alphas}});
  checks.push_back({{"check", "inclusion"}, {"function", unit_square}, {"alphas", alphas}});
  checks.push_back({{"check", "inclusion"}, {"function", disk}, {"alphas", alphas}});
  checks.push_back({{"check", "inclusion"},
                    {"function", {{"family", "sconcave_simplex"}, {"n", 2}, {"s", 1.0}}},
                    {"alphas", alphas},
                    {"directions", {{1.0, -1.0}, {-1.0, 1.0}}}});
  checks.push_back({{"check", "zeta"}, {"function", sexp(2)}, {"direction", {1.0, 0.0}}, {"alphas", alphas}});
  for (double a : {0.5, 1.0, 2.0}) {
    checks.push_back({{"check", "convexity"}, {"function", sexp(2)}, {"alpha", a}});
    checks.push_back({{"check", "convexity"}, {"function", unit_square}, {"alpha", a}});
  }
  checks.push_back({{"check", "rearrangement"}, {"function", unit_square}, {"alpha", 1.0}});
  checks.push_back({{"check", "rearrangement"}, {"function", unit_square}, {"alpha", 3.0}});
  checks.push_back({{"check", "continuation"},
                    {"alphas", {-0.75, -0.5, -0.25, 0.25, 0.5, 1.5}},
                    {"s", {0.5, 1.0, 2.0}}});
  const double h = 1.0 / std::numbers::sqrt2;
  checks.push_back({{"check", "autocorrelation_mc"},
                    {"function", {{"family", "sconcave_simplex"}, {"n", 2}, {"s", 1.0}}},
                    {"shifts", {{0.25 * h, -0.25 * h}, {0.5 * h, -0.5 * h}, {h, -h}}}});
  const ojson sc1 = {{"family", "sconcave_simplex"}, {"n", 1}, {"s", 1.0}};
  checks.push_back({{"check", "sconcave_corollaries"}, {"function", sc1}, {"alpha", 0.25}});
  checks.push_back({{"check", "sconcave_corollaries"}, {"function", sc1}, {"alpha", 2.0}});
  checks.push_back({{"check", "sconcave_corollaries"}, {"function", unit_interval}, {"alpha", 0.5}});

  QuadratureSpec q;
  q.sphere_resolution = 256;
  ojson root = {{"name", name}, {"quadrature", quadrature_json(q)}, {"checks", checks}};
  return parse_config(root.dump(2));
}

TestFunction parse_function(const ojson& j) { return function_at(j, Ctx{}, "function"); }
StarBody parse_body(const ojson& j) { return body_at(j, Ctx{}, "body"); }

std::vector<InequalityReport> run_check(const CheckSpec& check, const QuadratureSpec& spec) {
  return dispatch(check, spec, Ctx{}, check.name, true);
}

std::vector<InequalityReport> run_checks(const RunConfig& config) {
  std::vector<InequalityReport> out;
  for (std::size_t i = 0; i < config.checks.size(); ++i) {
    std::vector<InequalityReport> part;
    try {
      part = run_check(config.checks[i], config.quadrature);
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      InequalityReport r;
      r.check = config.checks[i].name;
      r.params = config.checks[i].params;
      r.status = Status::Violated;
      r.notes.push_back(std::string("evaluation failed: ") + e.what());
      part.push_back(std::move(r));
    }
    for (auto& r : part) out.push_back(std::move(r));
  }
  return out;
}

ojson reports_json(const std::vector<InequalityReport>& reports) {
  ojson arr = ojson::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return arr;
}

std::string summary_table(const std::vector<InequalityReport>& reports) {
  std::ostringstream os;
  os << std::left << std::setw(4) << "#" << std::setw(28) << "check" << std::setw(10) << "status" << std::right
     << std::setw(24) << "left" << std::setw(24) << "middle" << std::setw(24) << "right" << std::setw(24) << "margin1"
     << std::setw(24) << "margin2" << '\n';
  int counts[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    ++counts[static_cast<int>(r.status)];
    os << std::left << std::setw(4) << i + 1 << std::setw(28) << r.check << std::setw(10) << to_string(r.status)
       << std::right << std::setw(24) << fmt(r.left) << std::setw(24) << fmt(r.middle) << std::setw(24)
       << fmt(r.right) << std::setw(24) << fmt(r.margin1) << std::setw(24) << fmt(r.margin2) << '\n';
  }
  os << reports.size() << " checks: " << counts[0] << " HOLDS, " << counts[1] << " EQUALITY, " << counts[2]
     << " VIOLATED, " << counts[3] << " SKIPPED\n";
  return os.str();
}

int exit_code(const std::vector<InequalityReport>& reports) {
  for (const auto& r : reports)
    if (r.status == Status::Violated) return 1;
  return 0;
}

int run_suite(const RunConfig& config, std::ostream& summary) {
  const std::vector<InequalityReport> reports = run_checks(config);
  if (!config.report_path.empty()) {
    std::ofstream out(config.report_path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write report " + config.report_path);
    out << reports_json(reports).dump(2) << '\n';
    if (!out) throw Error(ErrorKind::Io, "failed writing report " + config.report_path);
  }
  summary << summary_table(reports);
  return exit_code(reports);
}

void export_body(const std::string& construct, const ojson& spec, double alpha, int resolution,
                 const QuadratureSpec& quadrature, std::ostream& csv) {
  require(resolution >= 1, "resolution must be positive");
  if (construct == "star" || construct == "radial_mean") {
    const StarBody E = parse_body(spec);
    const SphereGrid grid = sphere_grid(E.dim(), resolution);
    if (construct == "star") {
      write_radial_csv(csv, grid, radial_values(E, grid));
    } else {
      write_radial_csv(csv, grid, radial_mean_body(E, alpha, grid, quadrature).body.radii());
    }
    return;
  }
  const TestFunction f = parse_function(spec);
  const SphereGrid grid = sphere_grid(f.dim(), resolution);
  if (construct == "hls") write_radial_csv(csv, grid, hls_body(f, alpha, grid, quadrature).body.radii());
  else if (construct == "polar")
    write_radial_csv(csv, grid, polar_projection_body(f, alpha, grid, quadrature).body.radii());
  else if (construct == "radial_mean_function")
    write_radial_csv(csv, grid, radial_mean_function_body(f, alpha, grid, quadrature).body.radii());
  else
    throw ConfigError(0, "construct", "unknown construct '" + construct + "'");
}

}  // namespace ahls
