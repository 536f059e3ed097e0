#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "ahls/config.hpp"
#include "ahls/star_body.hpp"
#include "ahls/verify.hpp"

namespace {

int verify_command(const std::string& config_path, const std::string& preset, std::optional<std::uint64_t> seed,
                   const std::string& out) {
  ahls::RunConfig config;
  if (!config_path.empty()) config = ahls::load_config(config_path);
  else config = ahls::preset_config(preset.empty() ? "paper-desk-scale" : preset);
  if (seed) config.quadrature.seed = *seed;
  if (!out.empty()) config.report_path = out;
  return ahls::run_suite(config, std::cout);
}

int body_command(const std::string& construct, const std::string& spec_text, double alpha, int resolution,
                 std::optional<std::uint64_t> seed, const std::string& out) {
  ahls::ojson spec;
  try {
    spec = ahls::ojson::parse(spec_text);
  } catch (const ahls::ojson::parse_error& e) {
    throw ahls::ConfigError(1, "spec", std::string("malformed JSON: ") + e.what());
  }
  ahls::QuadratureSpec q;
  if (seed) q.seed = *seed;
  if (out.empty()) {
    ahls::export_body(construct, spec, alpha, resolution, q, std::cout);
    return 0;
  }
  std::ofstream file(out, std::ios::binary);
  if (!file) throw ahls::Error(ahls::ErrorKind::Io, "cannot write " + out);
  ahls::export_body(construct, spec, alpha, resolution, q, file);
  if (!file) throw ahls::Error(ahls::ErrorKind::Io, "failed writing " + out);
  return 0;
}

int constants_command(int max_n, const std::vector<double>& alphas) {
  std::cout << "n,alpha,gamma_constant\n";
  for (int n = 1; n <= max_n; ++n) {
    std::vector<double> grid = alphas;
    if (grid.empty()) grid = {0.5 * n, static_cast<double>(n), 2.0 * n};
    for (double a : grid) {
      if (!(a > 0.0)) continue;
      std::cout << n << "," << ahls::format_double(a) << "," << ahls::format_double(ahls::gamma_constant(n, a).value)
                << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anisotropic HLS body toolkit"};
  app.require_subcommand(1);

  std::string config_path, preset, out;
  std::optional<std::uint64_t> seed;
  auto* verify = app.add_subcommand("verify", "run a check suite");
  verify->add_option("--config", config_path, "JSON config file");
  verify->add_option("--preset", preset, "built-in suite (paper-desk-scale)");
  verify->add_option("--seed", seed, "Monte Carlo seed");
  verify->add_option("--out", out, "report JSON path");

  std::string construct = "hls", function_spec, body_spec;
  double alpha = 1.0;
  int resolution = 64;
  auto* body = app.add_subcommand("body", "export a radial profile as CSV");
  body->add_option("--construct", construct, "hls | polar | radial_mean_function | radial_mean | star");
  auto* fopt = body->add_option("--function", function_spec, "function spec (JSON)");
  auto* bopt = body->add_option("--body", body_spec, "body spec (JSON)");
  fopt->excludes(bopt);
  body->add_option("--alpha", alpha, "exponent");
  body->add_option("--resolution", resolution, "number of directions per angle");
  body->add_option("--seed", seed, "Monte Carlo seed");
  body->add_option("--out", out, "CSV path (default stdout)");

  int max_n = 5;
  std::vector<double> alphas;
  auto* constants = app.add_subcommand("constants", "print the sharp constant table");
  constants->add_option("--max-n", max_n, "largest dimension")->check(CLI::Range(1, 64));
  constants->add_option("--alpha", alphas, "exponents (default n/2, n, 2n)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*verify) return verify_command(config_path, preset, seed, out);
    if (*body) {
      if (function_spec.empty() && body_spec.empty()) {
        std::cerr << "error: body needs --function or --body\n";
        return 2;
      }
      return body_command(construct, function_spec.empty() ? body_spec : function_spec, alpha, resolution, seed, out);
    }
    return constants_command(max_n, alphas);
  } catch (const ahls::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const ahls::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}
