#include "invopt/riskmetrics.hpp"

#include <algorithm>
#include <cmath>

#include "invopt/catalog.hpp"
#include "invopt/eoq.hpp"
#include "invopt/errors.hpp"

namespace invopt {

double holding_cost_risk(double purchase_cost, double holding_cost_rate) {
  if (purchase_cost < 0.0 || holding_cost_rate < 0.0) throw DomainError("HCR inputs must be >= 0");
  return purchase_cost * holding_cost_rate;
}

double service_level(double lead_time_demand, double safety_stock, double starting_inventory,
                     double scheduled_receipts) {
  const double denom = starting_inventory + scheduled_receipts;
  if (!(denom > 0.0)) throw DomainError("service level: starting inventory + receipts must be > 0");
  return std::clamp((lead_time_demand + safety_stock) / denom, 0.0, 1.0);
}

double inventory_holding_cost(double order_quantity, double safety_stock, double holding_cost_per_unit) {
  if (order_quantity < 0.0 || safety_stock < 0.0 || holding_cost_per_unit < 0.0)
    throw DomainError("IHC inputs must be >= 0");
  return (0.5 * order_quantity + safety_stock) * holding_cost_per_unit;
}

double expected_backorders(double sl, double lead_time_demand) {
  if (sl < 0.0 || sl > 1.0) throw DomainError("service level must be in [0,1]");
  return (1.0 - sl) * lead_time_demand;
}

double expected_backorder_cost(double sl, double lead_time_demand, double backorder_cost_per_unit) {
  return expected_backorders(sl, lead_time_demand) * backorder_cost_per_unit;
}

double expected_fill_rate(double sl, double starting_inventory, double lead_time_demand) {
  if (!(lead_time_demand > 0.0)) throw DomainError("fill rate: lead-time demand must be > 0");
  if (sl < 0.0 || sl > 1.0) throw DomainError("service level must be in [0,1]");
  return std::clamp(sl + (1.0 - sl) * (starting_inventory / lead_time_demand), 0.0, 1.0);
}

std::vector<std::string> supplier_performance_rank(const Catalog& catalog) {
  std::vector<const ProductSpec*> order;
  for (const auto& p : catalog.products()) order.push_back(&p);
  std::sort(order.begin(), order.end(), [](const ProductSpec* a, const ProductSpec* b) {
    if (a->order_probability() != b->order_probability())
      return a->order_probability() < b->order_probability();
    return a->name() < b->name();
  });
  std::vector<std::string> names;
  for (const auto* p : order) names.push_back(p->name());
  return names;
}

std::vector<RiskReport> make_risk_report(const Catalog& catalog, const RiskSettings& settings) {
  const auto ranking = supplier_performance_rank(catalog);
  std::vector<RiskReport> rows;
  for (const auto& p : catalog.products()) {
    RiskReport r;
    r.product = p.name();
    r.hcr = holding_cost_risk(p.purchase_cost(), settings.holding_cost_rate);
    r.safety_stock = safety_stock(settings.safety_stock_sigmas, p.daily_order_size_std(),
                                  static_cast<double>(p.lead_time()), 0.0);
    r.service_level = p.starting_stock() > 0
                          ? service_level(p.lead_time_demand(), r.safety_stock,
                                          static_cast<double>(p.starting_stock()), 0.0)
                          : 0.0;
    r.spr_rank = static_cast<int>(std::find(ranking.begin(), ranking.end(), p.name()) - ranking.begin()) + 1;
    r.p_meet = p.order_probability();
    const double q = p.annual_demand() > 0.0 ? eoq(p.annual_demand(), p.order_cost(), p.holding_cost()) : 0.0;
    r.ihc = inventory_holding_cost(q, r.safety_stock, p.holding_cost());
    r.expected_backorders = expected_backorders(r.service_level, p.lead_time_demand());
    r.boc = r.expected_backorders * settings.backorder_cost_per_unit;
    r.efr = p.lead_time_demand() > 0.0
                ? expected_fill_rate(r.service_level, static_cast<double>(p.starting_stock()),
                                     p.lead_time_demand())
                : 1.0;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace invopt
