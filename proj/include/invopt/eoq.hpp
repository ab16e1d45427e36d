#pragma once

namespace invopt {

class ProductSpec;

// Closed-form lot-sizing analytics. All functions are pure.

// sqrt(2 D S / H). Throws DomainError on nonpositive input.
double eoq(double annual_demand, double order_cost, double holding_cost);

// (D/q) S + (q/2) H.
double total_annual_cost(double annual_demand, double q, double order_cost, double holding_cost);
double ordering_cost_component(double annual_demand, double q, double order_cost);
double holding_cost_component(double q, double holding_cost);

// D * price - total_annual_cost.
double total_annual_profit(double annual_demand, double selling_price, double q, double order_cost,
                           double holding_cost);

// ceil(z * sigma_d * sqrt(lead_time + review_time)); protective rounding.
double safety_stock(double z, double demand_std, double lead_time, double review_time);

double reorder_point(double lead_time_demand, double safety_stock);

// clamp(p_stockout * (1 - SS / average_inventory), 0, 1).
double expected_lost_order_proportion(double p_stockout, double safety_stock,
                                      double average_inventory);

// Continuous-review Q* = sqrt(2 D S / H) with D the demand per unit time as given.
double continuous_q_star(double daily_demand_mean, double order_cost, double holding_cost);

// Standard-normal quantile for a service level. 0.90, 0.95 and 0.99 come from a
// fixed 4-decimal table; with legacy_rounding, 0.95 maps to the textbook 1.65.
// Other levels fall back to the exact quantile.
double z_for_service_level(double service_level, bool legacy_rounding = false);

struct EoqSettings {
  double service_level = 0.95;
  bool legacy_z = false;
  double review_time = 0.0;  // days added to the lead time in the safety-stock formula
};

struct EoqReport {
  double annual_demand = 0.0;
  double eoq = 0.0;
  double total_annual_cost = 0.0;
  double total_annual_profit = 0.0;
  double safety_stock = 0.0;
  double reorder_point = 0.0;
  double expected_lost_order_proportion = 0.0;
  double z_score = 0.0;
  double service_level = 0.0;
};

// Uses the declared annual demand and lead-time demand of the product; average
// inventory for the lost-order proportion is EOQ/2 + SS and P(stockout) = 1 - SL.
EoqReport make_eoq_report(const ProductSpec& spec, const EoqSettings& settings = {});

}  // namespace invopt
