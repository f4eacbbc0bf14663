#pragma once

#include <complex>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "critjac/coeffs.hpp"

namespace critjac::cli {

enum ExitCode { ok = 0, regime_rejected = 2, numeric_failure = 3, bad_config = 4 };

struct ModelSpec {
  std::string kind = "laguerre";
  double p = 0.0;
  AsymptoticDescriptor desc;
  std::vector<double> a;  // table only
  std::vector<double> b;
};

struct RunConfig {
  std::string command;
  ModelSpec model;
  std::complex<double> z{0.0, 0.0};
  std::string side = "auto";  // auto | plus | minus | interior
  std::optional<double> lambda_min;
  std::optional<double> lambda_max;
  double lambda_step = 0.1;
  long n0 = 0;
  long N = 0;
  long n = 0;  // resolvent indices
  long m = 0;
  long stride = 1;
  double tol = 1e-4;
  std::string out;
  std::string format = "csv";
  int threads = 1;
};

// Thrown for anything that maps to exit code 4.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::complex<double> parse_complex(const std::string& text);
// Locale-independent, 17 significant digits.
std::string format_double(double x);

ModelSpec model_from_json(const nlohmann::json& j);
void apply_json(RunConfig& cfg, const nlohmann::json& j);
void validate(const RunConfig& cfg);
std::vector<double> lambda_grid(const RunConfig& cfg);

// Descriptor is classified before any model is built so regime rejections come first.
CoefficientModel build_model(const ModelSpec& spec);

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Full command line, args[0] being the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace critjac::cli
