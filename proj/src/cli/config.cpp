#include <fstream>

#include "mgpath/cli.hpp"

namespace mgpath::cli {

using nlohmann::json;

void apply_config_json(const json& j, RunConfig& cfg) {
  if (!j.is_object()) throw UsageError("config: top level must be an object");
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "spot") cfg.market.spot = value.get<double>();
      else if (key == "strike") cfg.market.strike = value.get<double>();
      else if (key == "rate") cfg.market.rate = value.get<double>();
      else if (key == "tau") cfg.market.tau = value.get<double>();
      else if (key == "lambda") cfg.mg.lambda = value.get<double>();
      else if (key == "mu") cfg.mg.mu = value.get<double>();
      else if (key == "xi") cfg.mg.xi = value.get<double>();
      else if (key == "alpha") cfg.mg.alpha = value.get<double>();
      else if (key == "rho") cfg.mg.rho = value.get<double>();
      else if (key == "y") cfg.mg.y = value.get<double>();
      else if (key == "n_steps") cfg.n_steps = value.get<std::size_t>();
      else if (key == "n_paths") cfg.mc.n_paths = value.get<std::size_t>();
      else if (key == "seed") cfg.mc.seed = value.get<std::uint64_t>();
      else if (key == "antithetic") cfg.mc.antithetic = value.get<bool>();
      else throw UsageError("config: unknown field '" + key + "'");
    } catch (const json::exception& e) {
      throw UsageError("config: field '" + key + "': " + e.what());
    }
  }
}

void apply_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw UsageError("config: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw UsageError("config: " + path + ": " + e.what());
  }
  apply_config_json(j, cfg);
}

json params_json(const RunConfig& cfg) {
  return {{"spot", cfg.market.spot},     {"strike", cfg.market.strike}, {"rate", cfg.market.rate},
          {"tau", cfg.market.tau},       {"lambda", cfg.mg.lambda},     {"mu", cfg.mg.mu},
          {"xi", cfg.mg.xi},             {"alpha", cfg.mg.alpha},       {"rho", cfg.mg.rho},
          {"y", cfg.mg.y},               {"n_steps", cfg.n_steps},      {"n_paths", cfg.mc.n_paths},
          {"seed", cfg.mc.seed},         {"antithetic", cfg.mc.antithetic}};
}

VariantMode parse_variant(const std::string& t) {
  if (t == "exact") return VariantMode::exact;
  if (t == "symmetrized") return VariantMode::symmetrized;
  throw UsageError("variant must be exact or symmetrized, got '" + t + "'");
}

ReferenceMeasure parse_reference(const std::string& t) {
  if (t == "gaussian") return ReferenceMeasure::gaussian;
  if (t == "drift-matched") return ReferenceMeasure::drift_matched;
  throw UsageError("reference must be gaussian or drift-matched, got '" + t + "'");
}

Discretization parse_rule(const std::string& t) {
  if (t == "midpoint") return Discretization::midpoint;
  if (t == "left") return Discretization::left_endpoint;
  throw UsageError("rule must be midpoint or left, got '" + t + "'");
}

SigmaReading parse_reading(const std::string& t) {
  if (t == "variance") return SigmaReading::variance;
  if (t == "volatility") return SigmaReading::volatility;
  throw UsageError("sigma reading must be variance or volatility, got '" + t + "'");
}

}  // namespace mgpath::cli
