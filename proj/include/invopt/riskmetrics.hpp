#pragma once

#include <string>
#include <vector>

namespace invopt {

class Catalog;
class ProductSpec;

double holding_cost_risk(double purchase_cost, double holding_cost_rate);

// (lead-time demand + SS) / (starting inventory + scheduled receipts), clamped to [0,1].
double service_level(double lead_time_demand, double safety_stock, double starting_inventory,
                     double scheduled_receipts);

// (Q/2 + SS) * h.
double inventory_holding_cost(double order_quantity, double safety_stock, double holding_cost_per_unit);

double expected_backorders(double service_level, double lead_time_demand);
double expected_backorder_cost(double service_level, double lead_time_demand,
                               double backorder_cost_per_unit);

// SL + (1 - SL) * starting inventory / lead-time demand, clamped to [0,1].
double expected_fill_rate(double service_level, double starting_inventory, double lead_time_demand);

// Ascending on-time probability, ties by name. Highest supplier risk first.
std::vector<std::string> supplier_performance_rank(const Catalog& catalog);

struct RiskSettings {
  double holding_cost_rate = 1.0;  // fraction of purchase cost per unit per day
  double backorder_cost_per_unit = 1.0;
  double safety_stock_sigmas = 1.0;  // SS = k * sigma_d * sqrt(lead time)
};

struct RiskReport {
  std::string product;
  double hcr = 0.0;
  double safety_stock = 0.0;
  double service_level = 0.0;
  int spr_rank = 0;  // 1 = highest supplier risk
  double p_meet = 0.0;
  double ihc = 0.0;
  double expected_backorders = 0.0;
  double boc = 0.0;
  double efr = 0.0;
};

// One row per product in catalog order. IHC uses the EOQ as the order quantity;
// scheduled receipts during lead time are taken as zero.
std::vector<RiskReport> make_risk_report(const Catalog& catalog, const RiskSettings& settings = {});

}  // namespace invopt
