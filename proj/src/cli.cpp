#include "invopt/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "invopt/bayesopt.hpp"
#include "invopt/catalog.hpp"
#include "invopt/csv.hpp"
#include "invopt/eoq.hpp"
#include "invopt/errors.hpp"
#include "invopt/objectives.hpp"
#include "invopt/report.hpp"
#include "invopt/riskmetrics.hpp"
#include "invopt/sensitivity.hpp"
#include "invopt/simengine.hpp"

namespace invopt::cli {

namespace {

using Config = std::vector<std::pair<std::string, std::string>>;

struct Globals {
  std::string catalog;
  std::uint64_t seed = 42;
  unsigned threads = 0;
  std::string out_dir;
};

struct SimOptions {
  long horizon = 365;
  long replications = 10000;
  std::string lead_time = "deterministic";
  double delay_factor = 1.5;
  std::string unmet = "lost";
};

void add_sim_options(CLI::App* app, SimOptions& o) {
  app->add_option("--horizon", o.horizon, "Simulated days per replication")->capture_default_str();
  app->add_option("--replications", o.replications, "Monte-Carlo replications")->capture_default_str();
  app->add_option("--lead-time", o.lead_time, "deterministic or meet-or-delay")
      ->check(CLI::IsMember({"deterministic", "meet-or-delay"}))
      ->capture_default_str();
  app->add_option("--delay-factor", o.delay_factor, "Late-delivery lead-time multiplier")->capture_default_str();
  app->add_option("--unmet", o.unmet, "lost or backorder")
      ->check(CLI::IsMember({"lost", "backorder"}))
      ->capture_default_str();
}

SimConfig make_sim_config(const Globals& g, const SimOptions& o) {
  SimConfig c;
  c.horizon = o.horizon;
  c.replications = o.replications;
  c.seed = g.seed;
  c.lead_time_mode = o.lead_time == "meet-or-delay" ? LeadTimeMode::MeetOrDelay : LeadTimeMode::Deterministic;
  c.delay_factor = o.delay_factor;
  c.unmet_demand = o.unmet == "backorder" ? UnmetDemand::Backorder : UnmetDemand::LostSales;
  c.threads = g.threads;
  c.validate();
  return c;
}

void add_sim_config(Config& cfg, const SimOptions& o) {
  cfg.emplace_back("horizon", std::to_string(o.horizon));
  cfg.emplace_back("replications", std::to_string(o.replications));
  cfg.emplace_back("lead_time", o.lead_time);
  cfg.emplace_back("delay_factor", csv::format_exact(o.delay_factor));
  cfg.emplace_back("unmet", o.unmet);
  cfg.emplace_back("crn", "replication i uses stream i of the product seed");
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ";") + x;
  return s;
}

Catalog require_catalog(const Globals& g) {
  if (g.catalog.empty()) throw ConfigError("--catalog is required");
  return load_catalog(g.catalog);
}

PolicyTable policy_table(const Catalog& catalog, const std::string& kind, const std::string& path) {
  const auto objective = parse_objective_kind(kind);
  PolicyTable table = path.empty() ? eoq_policy_table(catalog, objective) : load_policy_table(path);
  for (const auto& p : catalog.products()) {
    const auto it = table.find(p.name());
    if (it == table.end()) throw ConfigError("params: no entry for product " + p.name());
    if (policy_kind(it->second) != kind)
      throw ConfigError("params: product " + p.name() + " has a " + policy_kind(it->second) +
                        " policy, expected " + kind);
  }
  return table;
}

std::ofstream open_out(const std::string& path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path);
  return f;
}

// Writes the report to stdout, or to <out-dir>/<name> when --out-dir is set.
class Sink {
 public:
  Sink(const Globals& g, const std::string& name, std::ostream& out, std::ostream& err) : out_(out) {
    if (!g.out_dir.empty()) {
      path_ = (std::filesystem::path(g.out_dir) / name).string();
      file_ = open_out(path_);
      err << "wrote " << path_ << '\n';
    }
  }
  std::ostream& stream() { return path_.empty() ? out_ : file_; }

 private:
  std::ostream& out_;
  std::string path_;
  std::ofstream file_;
};

std::string policy_summary(const PolicyTable& table) {
  std::string s;
  for (const auto& [name, p] : table) {
    std::ostringstream os;
    write_policy_table(os, PolicyTable{{name, p}});
    std::string line = os.str();
    line = line.substr(line.find('\n') + 1);
    line.pop_back();
    s += (s.empty() ? "" : ";") + line;
  }
  return s;
}

std::vector<double> parse_deltas(const std::string& text) {
  std::vector<double> out;
  for (const auto& cell : csv::split(text)) out.push_back(csv::parse_double(cell, "--deltas", 1, "delta"));
  return out;
}

ConditioningFn load_conditioning(const std::string& path, std::size_t dims) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
    ConditioningFn fn;
    fn.alpha = j.at("alpha").get<double>();
    for (const auto& b : j.value("beliefs", nlohmann::json::array())) {
      PriorBelief pb;
      const auto center = b.at("center").get<std::vector<double>>();
      if (center.size() != dims)
        throw ConfigError("conditioning: belief center has " + std::to_string(center.size()) +
                          " coordinates, objective has " + std::to_string(dims));
      pb.center = Eigen::Map<const Eigen::VectorXd>(center.data(), static_cast<Eigen::Index>(center.size()));
      pb.width = b.at("width").get<double>();
      pb.weight = b.value("weight", 1.0);
      if (!(pb.width > 0.0)) throw ConfigError("conditioning: belief width must be > 0");
      fn.beliefs.push_back(std::move(pb));
    }
    return fn;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

int cmd_eoq(const Globals& g, double service_level, bool legacy_z, double review_time, std::ostream& out,
            std::ostream& err) {
  const auto catalog = require_catalog(g);
  for (const auto& w : catalog.warnings()) err << "warning: " << w << '\n';
  EoqSettings s{service_level, legacy_z, review_time};
  std::vector<EoqReport> reports;
  for (const auto& p : catalog.products()) reports.push_back(make_eoq_report(p, s));
  Sink sink(g, "eoq.csv", out, err);
  write_manifest(sink.stream(), make_manifest("eoq", g.catalog, g.seed,
                                              {{"service_level", csv::format_exact(service_level)},
                                               {"legacy_z", legacy_z ? "true" : "false"},
                                               {"review_time", csv::format_exact(review_time)}}));
  write_eoq_csv(sink.stream(), catalog, reports);
  return kExitOk;
}

int cmd_risk(const Globals& g, const RiskSettings& s, std::ostream& out, std::ostream& err) {
  const auto catalog = require_catalog(g);
  const auto rows = make_risk_report(catalog, s);
  Sink sink(g, "risk.csv", out, err);
  write_manifest(sink.stream(), make_manifest("risk", g.catalog, g.seed,
                                              {{"holding_cost_rate", csv::format_exact(s.holding_cost_rate)},
                                               {"backorder_cost_per_unit", csv::format_exact(s.backorder_cost_per_unit)},
                                               {"safety_stock_sigmas", csv::format_exact(s.safety_stock_sigmas)}}));
  write_risk_csv(sink.stream(), rows);
  return kExitOk;
}

struct SimulateArgs {
  std::string policy;
  std::string params;
  std::vector<std::string> products;
  std::string trajectory;
  std::string histogram;
  int bins = 50;
};

int cmd_simulate(const Globals& g, const SimOptions& so, const SimulateArgs& a, std::ostream& out,
                 std::ostream& err) {
  const auto full = require_catalog(g);
  const auto cfg = make_sim_config(g, so);
  const auto table = policy_table(full, a.policy, a.params);
  if (a.bins < 1) throw ConfigError("--bins must be >= 1");

  Config config{{"policy", a.policy}, {"params", a.params.empty() ? "eoq-defaults" : a.params},
                {"policies", policy_summary(table)}, {"products", join(a.products)}};
  add_sim_config(config, so);
  const auto manifest = make_manifest("simulate", g.catalog, g.seed, config);

  std::vector<StatsRow> rows;
  std::ofstream traj, hist;
  if (!a.trajectory.empty()) {
    traj = open_out(a.trajectory);
    write_manifest(traj, manifest);
    traj << "product,";
  }
  if (!a.histogram.empty()) {
    hist = open_out(a.histogram);
    write_manifest(hist, manifest);
    hist << "product,series,bin_lo,bin_hi,count\n";
  }
  for (std::size_t i = 0; i < full.size(); ++i) {
    const auto& p = full.products()[i];
    if (!a.products.empty() && std::find(a.products.begin(), a.products.end(), p.name()) == a.products.end())
      continue;
    const auto pcfg = product_config(cfg, i);
    const auto demand = make_demand_model(p);
    const auto& policy = table.at(p.name());
    const auto outcome = replicate_detailed(p, demand, policy, pcfg);
    rows.push_back({p.name(), policy, outcome.stats});
    if (traj.is_open()) {
      RngStream rng(pcfg.seed, 0);
      const auto run = simulate_once(p, demand, policy, pcfg, rng, true);
      std::ostringstream body;
      write_trajectory_csv(body, run.days);
      std::istringstream lines(body.str());
      std::string line;
      bool first = true;
      while (std::getline(lines, line)) {
        if (first) {
          if (rows.size() == 1) traj << line << '\n';
          first = false;
          continue;
        }
        traj << p.name() << ',' << line << '\n';
      }
    }
    if (hist.is_open()) {
      for (const auto& [series, samples] :
           {std::pair{"profit", &outcome.profits}, std::pair{"lost_orders", &outcome.lost_fractions}}) {
        std::ostringstream body;
        write_histogram_csv(body, series, emit_histogram(*samples, a.bins), false);
        std::istringstream lines(body.str());
        std::string line;
        while (std::getline(lines, line)) hist << p.name() << ',' << line << '\n';
      }
    }
  }
  for (const auto& n : a.products)
    if (!full.contains(n)) throw ConfigError("unknown product " + n);
  Sink sink(g, "simulate.csv", out, err);
  write_manifest(sink.stream(), manifest);
  write_stats_csv(sink.stream(), rows);
  return kExitOk;
}

struct SweepArgs {
  std::string product;
  long lo = 1000, hi = 3000, step = 50, review_period = 30;
};

int cmd_sweep(const Globals& g, const SimOptions& so, const SweepArgs& a, std::ostream& out, std::ostream& err) {
  const auto catalog = require_catalog(g);
  const auto cfg = make_sim_config(g, so);
  if (a.lo < 1 || a.hi < a.lo || a.step < 1) throw ConfigError("sweep range needs 1 <= lo <= hi and step >= 1");
  const auto& names = catalog.products();
  const auto it = std::find_if(names.begin(), names.end(), [&](const ProductSpec& p) { return p.name() == a.product; });
  if (it == names.end()) throw ConfigError("unknown product " + a.product);
  const auto pcfg = product_config(cfg, static_cast<std::size_t>(it - names.begin()));
  const auto points = sweep_oup(*it, make_demand_model(*it), pcfg, a.lo, a.hi, a.step, a.review_period);
  Config config{{"product", a.product}, {"lo", std::to_string(a.lo)}, {"hi", std::to_string(a.hi)},
                {"step", std::to_string(a.step)}, {"review_period", std::to_string(a.review_period)}};
  add_sim_config(config, so);
  Sink sink(g, "sweep.csv", out, err);
  write_manifest(sink.stream(), make_manifest("sweep", g.catalog, g.seed, config));
  write_sweep_csv(sink.stream(), a.product, points);
  return kExitOk;
}

int cmd_compare(const Globals& g, const SimOptions& so, const std::string& pq_path, const std::string& rq_path,
                std::ostream& out, std::ostream& err) {
  const auto catalog = require_catalog(g);
  const auto cfg = make_sim_config(g, so);
  const auto pq = policy_table(catalog, "pq", pq_path);
  const auto rq = policy_table(catalog, "rq", rq_path);
  const auto cmp = compare_policies(catalog, cfg, pq, rq);
  Config config{{"pq_params", pq_path.empty() ? "eoq-defaults" : pq_path},
                {"rq_params", rq_path.empty() ? "eoq-defaults" : rq_path},
                {"pq_policies", policy_summary(pq)},
                {"rq_policies", policy_summary(rq)}};
  add_sim_config(config, so);
  Sink sink(g, "compare.csv", out, err);
  write_manifest(sink.stream(), make_manifest("compare", g.catalog, g.seed, config));
  write_comparison_csv(sink.stream(), cmp);
  return kExitOk;
}

struct OptimizeArgs {
  std::string objective = "oup-per-product";
  std::string product;
  std::string bounds;
  int budget = 40;
  int initial_design = 8;
  std::string acquisition = "ei";
  std::string conditioning;
  std::string metadata;
  long review_period = 30;
  std::uint64_t objective_seed = 0;
  bool objective_seed_set = false;
};

int cmd_optimize(const Globals& g, const SimOptions& so, const OptimizeArgs& a, std::ostream& out,
                 std::ostream& err) {
  const auto catalog = require_catalog(g);
  const auto cfg = make_sim_config(g, so);
  const auto kind = parse_objective_kind(a.objective);

  Objective objective;
  std::size_t dims = 0;
  if (kind == ObjectiveKind::OupPerProduct) {
    objective = make_oup_per_product_objective(catalog, cfg, a.review_period);
    dims = catalog.size();
  } else {
    if (a.product.empty()) throw ConfigError("--product is required for objective " + a.objective);
    const auto& p = catalog.at(a.product);
    objective = kind == ObjectiveKind::ReorderQuantity ? make_rq_objective(p, cfg)
                                                       : make_pq_objective(p, cfg, a.review_period);
    dims = kind == ObjectiveKind::ReorderQuantity ? 2 : 1;
  }

  BoConfig bc;
  bc.bounds = a.bounds.empty() ? std::vector<Bound>(dims, Bound{0.0, 5000.0}) : load_bounds(a.bounds);
  if (bc.bounds.size() != dims)
    throw ConfigError("bounds: " + std::to_string(bc.bounds.size()) + " dimensions given, objective " +
                      a.objective + " has " + std::to_string(dims));
  bc.budget = a.budget;
  bc.initial_design = a.initial_design;
  bc.acquisition = a.acquisition == "pi" ? Acquisition::PI : Acquisition::EI;
  bc.seed = g.seed;
  bc.objective_seed = a.objective_seed_set ? a.objective_seed : g.seed;
  bc.validate();
  std::optional<ConditioningFn> conditioning;
  if (!a.conditioning.empty()) conditioning = load_conditioning(a.conditioning, dims);

  const auto result = bo_run(objective, bc, conditioning);

  Config config{{"objective", a.objective},
                {"product", a.product},
                {"budget", std::to_string(a.budget)},
                {"initial_design", std::to_string(a.initial_design)},
                {"acquisition", a.acquisition},
                {"objective_seed", std::to_string(bc.objective_seed)},
                {"conditioning", a.conditioning.empty() ? "none" : a.conditioning},
                {"review_period", std::to_string(a.review_period)}};
  std::string box;
  for (const auto& b : bc.bounds) box += (box.empty() ? "" : ";") + csv::format_exact(b.lo) + ":" + csv::format_exact(b.hi);
  config.emplace_back("bounds", box);
  add_sim_config(config, so);
  const auto manifest = make_manifest("optimize", g.catalog, g.seed, config);
  const auto labels = objective_labels(kind, catalog);

  Sink sink(g, "optimize.csv", out, err);
  write_manifest(sink.stream(), manifest);
  write_bo_history_csv(sink.stream(), labels, result.history);

  std::string meta_path = a.metadata;
  if (meta_path.empty() && !g.out_dir.empty()) meta_path = (std::filesystem::path(g.out_dir) / "optimize.json").string();
  if (!meta_path.empty()) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json m;
    m["tool"] = "invopt " + manifest.tool_version;
    m["subcommand"] = manifest.subcommand;
    m["catalog"] = manifest.catalog_path;
    m["seed"] = manifest.seed;
    m["rng"] = manifest.rng_algorithm;
    m["timestamp"] = manifest.timestamp;
    for (const auto& [k, v] : manifest.config) m["config"][k] = v;
    j["manifest"] = m;
    j["labels"] = labels;
    j["best_x"] = result.best_x;
    j["best_y"] = result.best_y;
    j["evaluations"] = result.history.size();
    j["aborted"] = result.aborted;
    j["abort_reason"] = result.abort_reason;
    if (result.surrogate) {
      const auto& k = result.surrogate->model().kernel();
      j["kernel"]["signal_variance"] = k.signal_variance;
      j["kernel"]["length_scales"] = std::vector<double>(k.length_scales.data(), k.length_scales.data() + k.length_scales.size());
      j["kernel"]["noise_variance"] = result.surrogate->model().noise_variance();
      j["kernel"]["input_space"] = "unit box";
    }
    auto f = open_out(meta_path);
    f << j.dump(2) << '\n';
    err << "wrote " << meta_path << '\n';
  }
  if (result.aborted) {
    err << "numerical: optimization aborted after " << result.history.size() << " evaluations: "
        << result.abort_reason << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

struct SensitivityArgs {
  std::string policy;
  std::string params;
  std::string mode = "linear";
  std::string deltas = "0.10,-0.05";
  std::string variables;
};

int cmd_sensitivity(const Globals& g, const SimOptions& so, const SensitivityArgs& a, std::ostream& out,
                    std::ostream& err) {
  const auto catalog = require_catalog(g);
  const auto cfg = make_sim_config(g, so);
  const auto table = policy_table(catalog, a.policy, a.params);
  SensitivitySpec spec;
  spec.mode = a.mode == "resim" ? SensitivityMode::Resimulate : SensitivityMode::Linear;
  spec.deltas = parse_deltas(a.deltas);
  spec.variables = a.variables.empty()
                       ? (a.policy == "pq" ? std::vector<std::string>{"order_up_to"}
                                           : std::vector<std::string>{"reorder_point", "order_quantity"})
                       : csv::split(a.variables);
  spec.validate();
  const auto rows = spec.mode == SensitivityMode::Linear
                        ? sensitivity_linear(catalog, sensitivity_baseline(catalog, table, cfg), spec)
                        : sensitivity_resim(catalog, table, cfg, spec);
  Config config{{"policy", a.policy}, {"params", a.params.empty() ? "eoq-defaults" : a.params},
                {"policies", policy_summary(table)}, {"mode", a.mode}, {"deltas", a.deltas},
                {"variables", join(spec.variables)}};
  add_sim_config(config, so);
  Sink sink(g, "sensitivity.csv", out, err);
  write_manifest(sink.stream(), make_manifest("sensitivity", g.catalog, g.seed, config));
  write_sensitivity_csv(sink.stream(), rows);
  return kExitOk;
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inventory policy simulation, analytics and Bayesian optimization", "invopt"};
  app.set_version_flag("--version", tool_version());
  Globals g;
  app.add_option("--catalog", g.catalog, "Product catalog CSV");
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)")->capture_default_str();
  app.add_option("--out-dir", g.out_dir, "Write reports here instead of stdout");
  app.require_subcommand(1);

  double service_level = 0.95, review_time = 0.0;
  bool legacy_z = false;
  auto* eoq_cmd = app.add_subcommand("eoq", "EOQ analytics per product");
  eoq_cmd->add_option("--service-level", service_level)->capture_default_str();
  eoq_cmd->add_flag("--legacy-z", legacy_z, "Use z = 1.65 for a 95% service level");
  eoq_cmd->add_option("--review-time", review_time, "Days added to the lead time for safety stock")->capture_default_str();

  RiskSettings risk;
  auto* risk_cmd = app.add_subcommand("risk", "Risk metrics per product");
  risk_cmd->add_option("--holding-cost-rate", risk.holding_cost_rate)->capture_default_str();
  risk_cmd->add_option("--backorder-cost", risk.backorder_cost_per_unit)->capture_default_str();
  risk_cmd->add_option("--safety-stock-sigmas", risk.safety_stock_sigmas)->capture_default_str();

  SimOptions so;
  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo replication of one policy per product");
  sim_cmd->add_option("--policy", sim.policy, "rq or pq")->required()->check(CLI::IsMember({"rq", "pq"}));
  sim_cmd->add_option("--params", sim.params, "Policy parameter CSV (default: EOQ-based)");
  sim_cmd->add_option("--product", sim.products, "Restrict to these products");
  sim_cmd->add_option("--emit-trajectory", sim.trajectory, "Day-by-day CSV of replication 0");
  sim_cmd->add_option("--emit-histogram", sim.histogram, "Profit and lost-order histograms CSV");
  sim_cmd->add_option("--bins", sim.bins, "Histogram bins")->capture_default_str();
  add_sim_options(sim_cmd, so);

  SweepArgs sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "Order-up-to sweep for one product");
  sweep_cmd->add_option("--product", sw.product)->required();
  sweep_cmd->add_option("--lo", sw.lo)->capture_default_str();
  sweep_cmd->add_option("--hi", sw.hi)->capture_default_str();
  sweep_cmd->add_option("--step", sw.step)->capture_default_str();
  sweep_cmd->add_option("--review-period", sw.review_period)->capture_default_str();
  add_sim_options(sweep_cmd, so);

  std::string pq_params, rq_params;
  auto* cmp_cmd = app.add_subcommand("compare", "Periodic vs continuous review over the catalog");
  cmp_cmd->add_option("--pq-params", pq_params, "Periodic policy CSV (default: EOQ-based)");
  cmp_cmd->add_option("--rq-params", rq_params, "Continuous policy CSV (default: EOQ-based)");
  add_sim_options(cmp_cmd, so);

  OptimizeArgs opt;
  auto* opt_cmd = app.add_subcommand("optimize", "Bayesian optimization of policy parameters");
  opt_cmd->add_option("--objective", opt.objective)
      ->check(CLI::IsMember({"rq", "pq", "oup-per-product"}))
      ->capture_default_str();
  opt_cmd->add_option("--product", opt.product, "Product for the rq and pq objectives");
  opt_cmd->add_option("--bounds", opt.bounds, "Bounds CSV (default: 0..5000 per dimension)");
  opt_cmd->add_option("--budget", opt.budget)->capture_default_str();
  opt_cmd->add_option("--initial-design", opt.initial_design)->capture_default_str();
  opt_cmd->add_option("--acquisition", opt.acquisition)->check(CLI::IsMember({"ei", "pi"}))->capture_default_str();
  opt_cmd->add_option("--conditioning", opt.conditioning, "Conditioning-function JSON");
  opt_cmd->add_option("--emit-metadata", opt.metadata, "Run metadata JSON");
  opt_cmd->add_option("--review-period", opt.review_period)->capture_default_str();
  auto* os_opt = opt_cmd->add_option("--objective-seed", opt.objective_seed, "Simulation seed (default: --seed)");
  add_sim_options(opt_cmd, so);

  SensitivityArgs sa;
  auto* sens_cmd = app.add_subcommand("sensitivity", "One-at-a-time sensitivity analysis");
  sens_cmd->add_option("--policy", sa.policy)->required()->check(CLI::IsMember({"rq", "pq"}));
  sens_cmd->add_option("--params", sa.params, "Policy parameter CSV (default: EOQ-based)");
  sens_cmd->add_option("--mode", sa.mode)->check(CLI::IsMember({"linear", "resim"}))->capture_default_str();
  sens_cmd->add_option("--deltas", sa.deltas)->capture_default_str();
  sens_cmd->add_option("--variables", sa.variables, "Comma-separated variable names");
  add_sim_options(sens_cmd, so);

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  if (args.empty()) {
    err << app.help();
    return kExitConfig;
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << tool_version() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "config: " << one_line(e.what()) << '\n';
    return kExitConfig;
  }
  opt.objective_seed_set = os_opt->count() > 0;

  try {
    if (*eoq_cmd) return cmd_eoq(g, service_level, legacy_z, review_time, out, err);
    if (*risk_cmd) return cmd_risk(g, risk, out, err);
    if (*sim_cmd) return cmd_simulate(g, so, sim, out, err);
    if (*sweep_cmd) return cmd_sweep(g, so, sw, out, err);
    if (*cmp_cmd) return cmd_compare(g, so, pq_params, rq_params, out, err);
    if (*opt_cmd) return cmd_optimize(g, so, opt, out, err);
    if (*sens_cmd) return cmd_sensitivity(g, so, sa, out, err);
  } catch (const IoError& e) {
    err << "io: " << one_line(e.what()) << '\n';
    return kExitConfig;
  } catch (const ValidationError& e) {
    err << "validate: " << one_line(e.what()) << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "numerical: " << one_line(e.what()) << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    err << "config: " << one_line(e.what()) << '\n';
    return kExitConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "io: " << one_line(e.what()) << '\n';
    return kExitConfig;
  }
  err << app.help();
  return kExitConfig;
}

}  // namespace invopt::cli
