#pragma once

#include <map>
#include <string>
#include <vector>

#include "invopt/catalog.hpp"
#include "invopt/simengine.hpp"

namespace invopt {

enum class SensitivityMode { Linear, Resimulate };

// Names accepted as sensitivity variables: policy parameters and catalog fields.
const std::vector<std::string>& sensitivity_variables();

struct SensitivitySpec {
  std::vector<std::string> variables;
  std::vector<double> deltas{0.10, -0.05};
  SensitivityMode mode = SensitivityMode::Linear;

  void validate() const;  // throws ConfigError
};

struct SensitivityOutputs {
  double profit = 0.0;
  double profit_std = 0.0;
  double lost_orders = 0.0;  // lost-order fraction
  double safety_stock = 0.0;
};

struct SensitivityRow {
  std::string variable;
  double delta = 0.0;
  std::string product;
  SensitivityOutputs outputs;
  // Linear mode only: profit_std and lost_orders are baseline copies.
  bool requires_resim = false;
};

using SensitivityBaseline = std::map<std::string, SensitivityOutputs>;

SensitivityOutputs to_sensitivity_outputs(const ReplicationStats& stats);

// Baseline per product, each simulated under product_config(cfg, index).
SensitivityBaseline sensitivity_baseline(const Catalog& catalog, const PolicyTable& policies,
                                         const SimConfig& cfg);

// Profit and safety stock scale by (1 + delta); the other outputs are copied
// and flagged. Rows are ordered by variable, then delta, then catalog product.
std::vector<SensitivityRow> sensitivity_linear(const Catalog& catalog, const SensitivityBaseline& baseline,
                                               const SensitivitySpec& spec);

// Re-simulates each perturbation with the baseline seed of the product.
// Integer policy parameters are rounded to whole units and must stay >= 1.
std::vector<SensitivityRow> sensitivity_resim(const Catalog& catalog, const PolicyTable& policies,
                                              const SimConfig& cfg, const SensitivitySpec& spec);

// The single perturbed case behind a resim row.
ProductSpec perturb_product(const ProductSpec& product, const std::string& variable, double delta);
PolicyParams perturb_policy(const PolicyParams& policy, const std::string& variable, double delta);

}  // namespace invopt
