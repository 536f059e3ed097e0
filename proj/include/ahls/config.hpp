#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "ahls/error.hpp"
#include "ahls/quadrature.hpp"
#include "ahls/report.hpp"
#include "ahls/star_body.hpp"
#include "ahls/test_function.hpp"

namespace ahls {

using ojson = nlohmann::ordered_json;

// Configuration problem with the offending line (1-based, 0 if unknown) and
// field path such as checks[2].function.n.
class ConfigError : public Error {
 public:
  ConfigError(int line, std::string field, const std::string& what);
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

struct CheckSpec {
  std::string name;  // e.g. ahls_low
  ojson params;      // the check object without its "check" key
};

struct RunConfig {
  std::string name = "custom";
  QuadratureSpec quadrature;
  std::string report_path;  // empty: no report file
  std::vector<CheckSpec> checks;
};

// Parses and validates; every function and body referenced by a check is
// constructed once so that errors surface here with their location.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
ojson to_json(const RunConfig& config);

// Built-in suites. Known names: paper-desk-scale.
RunConfig preset_config(const std::string& name);

TestFunction parse_function(const ojson& j);
StarBody parse_body(const ojson& j);

std::vector<InequalityReport> run_check(const CheckSpec& check, const QuadratureSpec& spec);
std::vector<InequalityReport> run_checks(const RunConfig& config);

// Report file: a JSON array of report objects.
ojson reports_json(const std::vector<InequalityReport>& reports);
std::string summary_table(const std::vector<InequalityReport>& reports);
// 0 when nothing is VIOLATED, 1 otherwise.
int exit_code(const std::vector<InequalityReport>& reports);

// Runs every check, writes the report file (if configured) and the summary
// table; returns the exit code.
int run_suite(const RunConfig& config, std::ostream& summary);

// Radial profile of a constructed body as CSV. construct is one of
// hls, polar, radial_mean_function (spec: a function), radial_mean or star
// (spec: a body).
void export_body(const std::string& construct, const ojson& spec, double alpha, int resolution,
                 const QuadratureSpec& quadrature, std::ostream& csv);

}  // namespace ahls
