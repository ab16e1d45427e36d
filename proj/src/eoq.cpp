#include "invopt/eoq.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include <boost/math/distributions/normal.hpp>

#include "invopt/catalog.hpp"
#include "invopt/errors.hpp"

namespace invopt {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be > 0");
}

}  // namespace

double eoq(double annual_demand, double order_cost, double holding_cost) {
  require_positive(annual_demand, "eoq: annual demand");
  require_positive(order_cost, "eoq: order cost");
  require_positive(holding_cost, "eoq: holding cost");
  return std::sqrt(2.0 * annual_demand * order_cost / holding_cost);
}

double ordering_cost_component(double annual_demand, double q, double order_cost) {
  require_positive(q, "order quantity");
  return annual_demand / q * order_cost;
}

double holding_cost_component(double q, double holding_cost) {
  require_positive(q, "order quantity");
  return 0.5 * q * holding_cost;
}

double total_annual_cost(double annual_demand, double q, double order_cost, double holding_cost) {
  return ordering_cost_component(annual_demand, q, order_cost) + holding_cost_component(q, holding_cost);
}

double total_annual_profit(double annual_demand, double selling_price, double q, double order_cost,
                           double holding_cost) {
  return annual_demand * selling_price - total_annual_cost(annual_demand, q, order_cost, holding_cost);
}

double safety_stock(double z, double demand_std, double lead_time, double review_time) {
  if (z < 0.0 || demand_std < 0.0 || lead_time + review_time < 0.0)
    throw DomainError("safety_stock: inputs must be non-negative");
  const double raw = z * demand_std * std::sqrt(lead_time + review_time);
  // Guard against 184.0000000001-style products of exact integers.
  const double nearest = std::round(raw);
  if (std::fabs(raw - nearest) < 1e-9 * std::max(1.0, raw)) return nearest;
  return std::ceil(raw);
}

double reorder_point(double lead_time_demand, double safety_stock) {
  return lead_time_demand + safety_stock;
}

double expected_lost_order_proportion(double p_stockout, double safety_stock,
                                      double average_inventory) {
  if (!(average_inventory > 0.0)) throw DomainError("average inventory must be > 0");
  if (p_stockout < 0.0 || p_stockout > 1.0) throw DomainError("P(stockout) must be in [0,1]");
  return std::clamp(p_stockout * (1.0 - safety_stock / average_inventory), 0.0, 1.0);
}

double continuous_q_star(double daily_demand_mean, double order_cost, double holding_cost) {
  require_positive(daily_demand_mean, "q*: demand");
  require_positive(order_cost, "q*: order cost");
  require_positive(holding_cost, "q*: holding cost");
  return std::sqrt(2.0 * daily_demand_mean * order_cost / holding_cost);
}

double z_for_service_level(double service_level, bool legacy_rounding) {
  if (!(service_level > 0.0 && service_level < 1.0))
    throw DomainError("service level must be in (0,1)");
  static constexpr std::array<std::pair<double, double>, 3> kTable{
      {{0.90, 1.2816}, {0.95, 1.6449}, {0.99, 2.3263}}};
  if (legacy_rounding && std::fabs(service_level - 0.95) < 1e-12) return 1.65;
  for (const auto& [level, z] : kTable)
    if (std::fabs(service_level - level) < 1e-12) return z;
  return boost::math::quantile(boost::math::normal_distribution<double>(), service_level);
}

EoqReport make_eoq_report(const ProductSpec& spec, const EoqSettings& settings) {
  EoqReport r;
  r.service_level = settings.service_level;
  r.z_score = z_for_service_level(settings.service_level, settings.legacy_z);
  r.annual_demand = spec.annual_demand();
  r.eoq = eoq(spec.annual_demand(), spec.order_cost(), spec.holding_cost());
  r.total_annual_cost = total_annual_cost(spec.annual_demand(), r.eoq, spec.order_cost(), spec.holding_cost());
  r.total_annual_profit = total_annual_profit(spec.annual_demand(), spec.selling_price(), r.eoq,
                                              spec.order_cost(), spec.holding_cost());
  r.safety_stock = safety_stock(r.z_score, spec.daily_order_size_std(),
                                static_cast<double>(spec.lead_time()), settings.review_time);
  r.reorder_point = reorder_point(spec.lead_time_demand(), r.safety_stock);
  r.expected_lost_order_proportion =
      expected_lost_order_proportion(1.0 - r.service_level, r.safety_stock, 0.5 * r.eoq + r.safety_stock);
  return r;
}

}  // namespace invopt
