#include "invopt/sensitivity.hpp"

#include <algorithm>
#include <cmath>

#include "invopt/errors.hpp"

namespace invopt {

namespace {

bool is_policy_variable(const std::string& v) {
  return v == "order_up_to" || v == "reorder_point" || v == "order_quantity";
}

long scale_units(long value, double delta, const std::string& variable) {
  const long scaled = std::lround(static_cast<double>(value) * (1.0 + delta));
  if (scaled < 1)
    throw ConfigError("sensitivity: " + variable + " " + std::to_string(value) + " with delta " +
                      std::to_string(delta) + " is no longer positive");
  return scaled;
}

const PolicyParams& policy_for(const PolicyTable& policies, const std::string& name) {
  const auto it = policies.find(name);
  if (it == policies.end()) throw ConfigError("sensitivity: no policy parameters for product " + name);
  return it->second;
}

}  // namespace

const std::vector<std::string>& sensitivity_variables() {
  static const std::vector<std::string> names{
      "order_up_to",   "reorder_point", "order_quantity", "selling_price", "purchase_cost",
      "order_cost",    "holding_cost",  "mean",           "std_dev",       "probability"};
  return names;
}

void SensitivitySpec::validate() const {
  if (variables.empty()) throw ConfigError("sensitivity: no variables given");
  const auto& known = sensitivity_variables();
  for (const auto& v : variables)
    if (std::find(known.begin(), known.end(), v) == known.end())
      throw ConfigError("sensitivity: unknown variable '" + v + "'");
  if (deltas.empty()) throw ConfigError("sensitivity: no deltas given");
  for (double d : deltas)
    if (!std::isfinite(d) || d <= -1.0) throw ConfigError("sensitivity: every delta must be finite and > -1");
}

SensitivityOutputs to_sensitivity_outputs(const ReplicationStats& stats) {
  return {stats.mean_profit, stats.profit_std, stats.lost_order_fraction, stats.safety_stock};
}

SensitivityBaseline sensitivity_baseline(const Catalog& catalog, const PolicyTable& policies,
                                         const SimConfig& cfg) {
  SensitivityBaseline out;
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const auto& p = catalog.products()[i];
    out[p.name()] = to_sensitivity_outputs(
        replicate(p, make_demand_model(p), policy_for(policies, p.name()), product_config(cfg, i)));
  }
  return out;
}

std::vector<SensitivityRow> sensitivity_linear(const Catalog& catalog, const SensitivityBaseline& baseline,
                                               const SensitivitySpec& spec) {
  spec.validate();
  std::vector<SensitivityRow> rows;
  for (const auto& v : spec.variables)
    for (double d : spec.deltas)
      for (const auto& p : catalog.products()) {
        const auto it = baseline.find(p.name());
        if (it == baseline.end()) throw ConfigError("sensitivity: no baseline for product " + p.name());
        SensitivityRow row{v, d, p.name(), it->second, true};
        row.outputs.profit *= 1.0 + d;
        row.outputs.safety_stock *= 1.0 + d;
        rows.push_back(std::move(row));
      }
  return rows;
}

ProductSpec perturb_product(const ProductSpec& product, const std::string& variable, double delta) {
  ProductFields f = product.fields();
  const double k = 1.0 + delta;
  if (variable == "selling_price") f.selling_price *= k;
  else if (variable == "purchase_cost") f.purchase_cost *= k;
  else if (variable == "order_cost") f.order_cost *= k;
  else if (variable == "holding_cost") f.holding_cost *= k;
  else if (variable == "mean") f.daily_order_size_mean *= k;
  else if (variable == "std_dev") f.daily_order_size_std *= k;
  else if (variable == "probability") f.order_probability *= k;
  else if (!is_policy_variable(variable)) throw ConfigError("sensitivity: unknown variable '" + variable + "'");
  try {
    return ProductSpec(std::move(f));
  } catch (const ValidationError& e) {
    throw ConfigError(std::string("sensitivity: perturbation is invalid: ") + e.what());
  }
}

PolicyParams perturb_policy(const PolicyParams& policy, const std::string& variable, double delta) {
  if (!is_policy_variable(variable)) return policy;
  if (const auto* pr = std::get_if<PeriodicReview>(&policy)) {
    if (variable != "order_up_to")
      throw ConfigError("sensitivity: " + variable + " does not apply to a periodic-review policy");
    return PeriodicReview{pr->review_period, scale_units(pr->order_up_to, delta, variable)};
  }
  const auto& cr = std::get<ContinuousReview>(policy);
  if (variable == "reorder_point")
    return ContinuousReview{scale_units(cr.reorder_point, delta, variable), cr.order_quantity};
  if (variable == "order_quantity")
    return ContinuousReview{cr.reorder_point, scale_units(cr.order_quantity, delta, variable)};
  throw ConfigError("sensitivity: " + variable + " does not apply to a continuous-review policy");
}

std::vector<SensitivityRow> sensitivity_resim(const Catalog& catalog, const PolicyTable& policies,
                                              const SimConfig& cfg, const SensitivitySpec& spec) {
  spec.validate();
  // Resolve every case first so a bad perturbation fails before any simulation.
  struct Case {
    std::size_t index;
    ProductSpec product;
    PolicyParams policy;
  };
  std::vector<Case> cases;
  for (const auto& v : spec.variables)
    for (double d : spec.deltas)
      for (std::size_t i = 0; i < catalog.size(); ++i) {
        const auto& p = catalog.products()[i];
        cases.push_back({i, perturb_product(p, v, d), perturb_policy(policy_for(policies, p.name()), v, d)});
      }
  std::vector<SensitivityRow> rows;
  std::size_t k = 0;
  for (const auto& v : spec.variables)
    for (double d : spec.deltas)
      for (std::size_t i = 0; i < catalog.size(); ++i, ++k) {
        const auto& c = cases[k];
        const auto stats =
            replicate(c.product, make_demand_model(c.product), c.policy, product_config(cfg, c.index));
        rows.push_back({v, d, catalog.products()[i].name(), to_sensitivity_outputs(stats), false});
      }
  return rows;
}

}  // namespace invopt
