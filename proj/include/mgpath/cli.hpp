#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mgpath/gauss_path.hpp"
#include "mgpath/kernel.hpp"
#include "mgpath/mean_path.hpp"
#include "mgpath/mg_alpha1.hpp"
#include "mgpath/params.hpp"
#include "mgpath/sde_oracle.hpp"

namespace mgpath::cli {

/// Bad command line or config file; maps to exit status 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;               // price, kernel, compare, moments
  std::vector<std::string> methods;  // one for price/kernel, two or more for compare
  MarketParams market;
  MGParams mg;
  std::size_t n_steps = 64;
  MCSpec mc;
  std::optional<double> sigma;       // bs only; defaults to e^{y/2}
  VariantMode variant = VariantMode::exact;
  ReferenceMeasure reference = ReferenceMeasure::drift_matched;
  Discretization rule = Discretization::midpoint;
  bool normalization_correction = false;
  bool half_rho_sq = false;
  std::size_t nodes = 64;
  SigmaReading reading = SigmaReading::variance;
  SpotDrift drift;
  int order = 4;
  std::string output;                // json or csv; empty = command default
  std::string out_path;              // empty = stdout
};

/// Applies the fields of a JSON config object; unknown keys are a UsageError.
void apply_config_json(const nlohmann::json& j, RunConfig& cfg);
void apply_config_file(const std::string& path, RunConfig& cfg);

nlohmann::json params_json(const RunConfig& cfg);

VariantMode parse_variant(const std::string& text);
ReferenceMeasure parse_reference(const std::string& text);
Discretization parse_rule(const std::string& text);
SigmaReading parse_reading(const std::string& text);

/// Outcome of one pricing method.
struct MethodResult {
  std::string method;
  double price = 0.0;
  double stderr = 0.0;
  std::size_t n_paths = 0;
  double seconds = 0.0;
  bool stochastic = false;
  nlohmann::json extra = nlohmann::json::object();
};

/// Runs one method token (e.g. "mg-alpha1", "mg-general:symmetrized").
/// Monte Carlo methods use a seed derived from (cfg seed, method name).
MethodResult run_method(const RunConfig& cfg, const std::string& token);

/// Full command-line entry point; returns the process exit status.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace mgpath::cli
