#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mgpath/black_scholes.hpp"
#include "mgpath/cli.hpp"
#include "mgpath/errors.hpp"
#include "mgpath/mg_general.hpp"
#include "mgpath/rng.hpp"

namespace mgpath::cli {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
  return h;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string format_number(double x) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  os << x;
  return os.str();
}

Alpha1Options alpha1_options(const RunConfig& cfg, VariantMode mode) { return {mode, cfg.reference, cfg.rule}; }

GeneralOptions general_options(const RunConfig& cfg, VariantMode mode) {
  return {mode, cfg.rule, cfg.normalization_correction, cfg.half_rho_sq};
}

void fill(MethodResult& r, const PriceEstimate& e) {
  r.price = e.price;
  r.stderr = e.stderr;
  r.n_paths = e.n_paths;
  r.stochastic = true;
  r.extra["effective_sample_size"] = e.effective_sample_size;
}

// Optional command-line values; only those given override the config.
struct Flags {
  std::optional<double> spot, strike, rate, tau, sigma, lambda, mu, xi, alpha, rho, y;
  std::optional<std::size_t> n_steps, n_paths, nodes;
  std::optional<std::uint64_t> seed;
  bool antithetic = false;
  bool normalization_correction = false;
  bool half_rho_sq = false;
  std::string method, methods, variant, reference, rule, reading, drift, output, out, config;
  int order = 4;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--spot", f.spot, "Spot price S");
  sub->add_option("--strike", f.strike, "Strike K");
  sub->add_option("--rate", f.rate, "Interest rate r");
  sub->add_option("--tau", f.tau, "Time to expiry");
  sub->add_option("--sigma", f.sigma, "Volatility for --method bs (default e^{y/2})");
  sub->add_option("--lambda", f.lambda, "Variance drift constant");
  sub->add_option("--mu", f.mu, "Variance drift slope");
  sub->add_option("--xi", f.xi, "Vol-of-vol scale");
  sub->add_option("--alpha", f.alpha, "Vol-of-vol exponent");
  sub->add_option("--rho", f.rho, "Spot/variance correlation");
  sub->add_option("--y", f.y, "Current log-variance");
  sub->add_option("--n-steps", f.n_steps, "Time steps");
  sub->add_option("--paths", f.n_paths, "Monte Carlo paths");
  sub->add_option("--seed", f.seed, "Base seed");
  sub->add_flag("--antithetic", f.antithetic, "Antithetic pairs");
  sub->add_option("--variant", f.variant, "exact | symmetrized");
  sub->add_option("--reference", f.reference, "gaussian | drift-matched (mg-alpha1)");
  sub->add_option("--rule", f.rule, "midpoint | left");
  sub->add_flag("--normalization-correction", f.normalization_correction,
                "mg-general: add the unit-mass correction to S0");
  sub->add_flag("--half-rho-sq", f.half_rho_sq, "mg-general: use -rho^2/2 in r~");
  sub->add_option("--nodes", f.nodes, "Mean-path Gauss-Hermite nodes per axis");
  sub->add_option("--sigma-reading", f.reading, "variance | volatility (mean-path)");
  sub->add_option("--drift", f.drift, "rn | phys:<phi> (sde-oracle)");
  sub->add_option("--output", f.output, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", f.out, "Write the report to this file");
  sub->add_option("--config", f.config, "JSON config file");
}

RunConfig resolve(const std::string& command, const Flags& f) {
  RunConfig cfg;
  cfg.command = command;
  if (!f.config.empty()) apply_config_file(f.config, cfg);
  auto set = [](auto& dst, const auto& src) {
    if (src) dst = *src;
  };
  set(cfg.market.spot, f.spot);
  set(cfg.market.strike, f.strike);
  set(cfg.market.rate, f.rate);
  set(cfg.market.tau, f.tau);
  set(cfg.mg.lambda, f.lambda);
  set(cfg.mg.mu, f.mu);
  set(cfg.mg.xi, f.xi);
  set(cfg.mg.alpha, f.alpha);
  set(cfg.mg.rho, f.rho);
  set(cfg.mg.y, f.y);
  set(cfg.n_steps, f.n_steps);
  set(cfg.mc.n_paths, f.n_paths);
  set(cfg.mc.seed, f.seed);
  set(cfg.nodes, f.nodes);
  cfg.sigma = f.sigma;
  if (f.antithetic) cfg.mc.antithetic = true;
  cfg.normalization_correction = f.normalization_correction;
  cfg.half_rho_sq = f.half_rho_sq;
  if (!f.variant.empty()) cfg.variant = parse_variant(f.variant);
  if (!f.reference.empty()) cfg.reference = parse_reference(f.reference);
  if (!f.rule.empty()) cfg.rule = parse_rule(f.rule);
  if (!f.reading.empty()) cfg.reading = parse_reading(f.reading);
  if (!f.drift.empty()) cfg.drift = SpotDrift::parse(f.drift);
  cfg.order = f.order;
  cfg.output = f.output;
  cfg.out_path = f.out;

  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
      if (!item.empty()) out.push_back(item);
    return out;
  };
  if (command == "compare") {
    cfg.methods = split(f.methods);
    if (cfg.methods.size() < 2) throw UsageError("compare needs at least two methods");
  } else if (command == "price" || command == "kernel") {
    if (f.method.empty()) throw UsageError(command + " needs --method");
    cfg.methods = {f.method};
  }
  if (cfg.output.empty()) cfg.output = (command == "price" || command == "moments") ? "json" : "csv";
  return cfg;
}

json base_report(const RunConfig& cfg) {
  return {{"version", MGPATH_VERSION}, {"command", cfg.command}, {"params", params_json(cfg)}, {"seed", cfg.mc.seed}};
}

json result_json(const MethodResult& r) {
  json j = {{"method", r.method}, {"price", r.price}, {"stderr", r.stderr}, {"n_paths", r.n_paths},
            {"seconds", r.seconds}};
  j.update(r.extra);
  return j;
}

std::string results_csv(const std::vector<MethodResult>& rows) {
  std::string s = "method,price,stderr,n_paths,seconds\n";
  for (const auto& r : rows)
    s += r.method + ',' + format_number(r.price) + ',' + format_number(r.stderr) + ',' + std::to_string(r.n_paths) +
         ',' + format_number(r.seconds) + '\n';
  return s;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out_path);
  if (!file) throw UsageError("cannot write " + cfg.out_path);
  file << text;
}

void warn_truncation(const MethodResult& r, std::ostream& err) {
  if (r.extra.contains("truncation_rate") && r.extra["truncation_rate"].get<double>() > 0.01)
    err << "warning: " << r.method << ": variance truncated on "
        << 100.0 * r.extra["truncation_rate"].get<double>() << "% of steps\n";
}

int price_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const MethodResult r = run_method(cfg, cfg.methods.front());
  warn_truncation(r, err);
  if (cfg.output == "csv") {
    emit(cfg, results_csv({r}), out);
  } else {
    json j = base_report(cfg);
    j.update(result_json(r));
    j["seconds"] = seconds_since(start);
    emit(cfg, j.dump(2) + "\n", out);
  }
  return 0;
}

int compare_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  std::vector<MethodResult> rows;
  for (const auto& m : cfg.methods) {
    rows.push_back(run_method(cfg, m));
    warn_truncation(rows.back(), err);
  }
  json z = json::array();
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = a + 1; b < rows.size(); ++b) {
      if (!rows[a].stochastic && !rows[b].stochastic) continue;
      z.push_back({{"a", rows[a].method},
                   {"b", rows[b].method},
                   {"z", z_score(rows[a].price, rows[a].stderr, rows[b].price, rows[b].stderr)}});
    }
  if (cfg.output == "csv") {
    emit(cfg, results_csv(rows), out);
    for (const auto& e : z)
      err << "z " << e["a"].get<std::string>() << " " << e["b"].get<std::string>() << " "
          << format_number(e["z"].get<double>()) << "\n";
  } else {
    json j = base_report(cfg);
    j["results"] = json::array();
    for (const auto& r : rows) j["results"].push_back(result_json(r));
    j["z_scores"] = z;
    j["seconds"] = seconds_since(start);
    emit(cfg, j.dump(2) + "\n", out);
  }
  return 0;
}

int kernel_command(const RunConfig& cfg, std::ostream& out) {
  const auto start = Clock::now();
  const std::string& token = cfg.methods.front();
  const auto colon = token.find(':');
  const std::string name = token.substr(0, colon);
  const VariantMode mode = colon == std::string::npos ? cfg.variant : parse_variant(token.substr(colon + 1));
  MCSpec mc = cfg.mc;
  mc.seed = derive_seed(cfg.mc.seed, fnv1a(name));
  const GridSpec grid(cfg.market.tau, cfg.n_steps);
  KernelTable t;
  if (name == "mg-alpha1")
    t = kernel_estimate_alpha1(cfg.market, cfg.mg, grid, mc, {}, alpha1_options(cfg, mode));
  else if (name == "mg-general")
    t = kernel_estimate_general(cfg.market, cfg.mg, grid, mc, {}, general_options(cfg, mode));
  else
    throw UsageError("kernel supports mg-alpha1 and mg-general, got '" + name + "'");

  if (cfg.output == "csv") {
    emit(cfg, kernel_csv(t), out);
    return 0;
  }
  json j = base_report(cfg);
  j["method"] = token;
  j["integral"] = t.integral;
  j["integral_stderr"] = t.integral_stderr;
  j["dropped_paths"] = t.dropped_paths;
  json rows = json::array();
  for (Eigen::Index k = 0; k < t.density.rows(); ++k)
    for (Eigen::Index c = 0; c < t.density.cols(); ++c)
      rows.push_back({0.5 * (t.x_edges(k) + t.x_edges(k + 1)), 0.5 * (t.y_edges(c) + t.y_edges(c + 1)),
                      t.density(k, c), t.stderr(k, c)});
  j["columns"] = {"x0", "y0", "density", "stderr"};
  j["table"] = rows;
  j["seconds"] = seconds_since(start);
  emit(cfg, j.dump(2) + "\n", out);
  return 0;
}

int moments_command(const RunConfig& cfg, std::ostream& out) {
  const auto start = Clock::now();
  MCSpec mc = cfg.mc;
  mc.seed = derive_seed(cfg.mc.seed, fnv1a("moments"));
  const MomentReport m = wick_moment_check(GridSpec(cfg.market.tau, cfg.n_steps), mc, cfg.order, cfg.mg.xi);
  if (cfg.output == "csv") {
    emit(cfg,
         "order,ratio,stderr,expected,ratio_to_sample_variance\n" + std::to_string(m.order) + ',' +
             format_number(m.ratio) + ',' + format_number(m.stderr) + ',' + format_number(m.expected) + ',' +
             format_number(m.ratio_to_sample_variance) + '\n',
         out);
    return 0;
  }
  json j = base_report(cfg);
  j["order"] = m.order;
  j["ratio"] = m.ratio;
  j["stderr"] = m.stderr;
  j["expected"] = m.expected;
  j["ratio_to_sample_variance"] = m.ratio_to_sample_variance;
  j["seconds"] = seconds_since(start);
  emit(cfg, j.dump(2) + "\n", out);
  return 0;
}

}  // namespace

MethodResult run_method(const RunConfig& cfg, const std::string& token) {
  const auto start = Clock::now();
  const auto colon = token.find(':');
  const std::string name = token.substr(0, colon);
  const VariantMode mode = colon == std::string::npos ? cfg.variant : parse_variant(token.substr(colon + 1));
  MCSpec mc = cfg.mc;
  mc.seed = derive_seed(cfg.mc.seed, fnv1a(name));
  MethodResult r;
  r.method = token;

  if (name == "bs") {
    const double sigma = cfg.sigma.value_or(cfg.mg.volatility());
    const BSResult b = bs_price(cfg.market, sigma);
    r.price = b.price;
    r.extra = {{"sigma", sigma}, {"d_plus", b.d_plus}, {"d_minus", b.d_minus}};
  } else if (name == "mean-path") {
    MeanPathOptions opts;
    opts.reading = cfg.reading;
    opts.nodes = cfg.nodes;
    opts.max_nodes = std::max<std::size_t>(256, 2 * cfg.nodes);
    const MeanPathResult m = price_mean_path(cfg.market, cfg.mg, opts);
    r.price = m.price;
    r.extra = {{"nodes", m.nodes}, {"relative_change", m.relative_change}};
  } else {
    const GridSpec grid(cfg.market.tau, cfg.n_steps);
    if (name == "mg-alpha1") {
      fill(r, price_alpha1(cfg.market, cfg.mg, grid, mc, alpha1_options(cfg, mode)));
    } else if (name == "mg-general") {
      fill(r, price_general(cfg.market, cfg.mg, grid, mc, general_options(cfg, mode)));
    } else if (name == "mean-path-oracle") {
      fill(r, mean_path_oracle(cfg.market, cfg.mg, grid, mc));
    } else if (name == "sde-oracle") {
      const OracleEstimate e = price_oracle(cfg.market, cfg.mg, grid, mc, cfg.drift);
      fill(r, e);
      r.extra["truncation_rate"] = e.truncation_rate;
    } else if (name == "hull-white") {
      const OracleEstimate e = hull_white_mixing_price(cfg.market, cfg.mg, grid, mc);
      fill(r, e);
      r.extra["truncation_rate"] = e.truncation_rate;
    } else {
      throw UsageError("unknown method '" + name + "'");
    }
  }
  r.seconds = seconds_since(start);
  return r;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Merton-Garman path-integral option pricer", "mgpath"};
  app.require_subcommand(1);
  app.set_version_flag("--version", MGPATH_VERSION);

  Flags flags;
  auto* price = app.add_subcommand("price", "Price with one method");
  auto* kernel = app.add_subcommand("kernel", "Estimate the evolution kernel table");
  auto* compare = app.add_subcommand("compare", "Price with several methods and report z-scores");
  auto* moments = app.add_subcommand("moments", "Gaussian velocity moment check");
  for (auto* sub : {price, kernel, compare, moments}) add_common(sub, flags);
  const std::string method_help = "bs | mg-alpha1 | mg-general | mean-path | mean-path-oracle | sde-oracle | hull-white";
  price->add_option("--method", flags.method, method_help);
  kernel->add_option("--method", flags.method, "mg-alpha1 | mg-general");
  compare->add_option("--methods", flags.methods, "Comma-separated method list")->required();
  moments->add_option("--order", flags.order, "Moment order (2..6)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }

  try {
    std::string command;
    for (auto* sub : {price, kernel, compare, moments})
      if (sub->parsed()) command = sub->get_name();
    const RunConfig cfg = resolve(command, flags);
    if (command == "price") return price_command(cfg, out, err);
    if (command == "compare") return compare_command(cfg, out, err);
    if (command == "kernel") return kernel_command(cfg, out);
    return moments_command(cfg, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const ConvergenceError& e) {
    err << "convergence error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace mgpath::cli
