#include "invopt/objectives.hpp"

#include <algorithm>
#include <cmath>

#include "invopt/eoq.hpp"
#include "invopt/errors.hpp"

namespace invopt {

ObjectiveKind parse_objective_kind(std::string_view text) {
  if (text == "rq") return ObjectiveKind::ReorderQuantity;
  if (text == "pq") return ObjectiveKind::OrderUpTo;
  if (text == "oup-per-product") return ObjectiveKind::OupPerProduct;
  throw ConfigError("unknown objective '" + std::string(text) + "' (expected rq, pq or oup-per-product)");
}

std::string objective_kind_name(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::ReorderQuantity: return "rq";
    case ObjectiveKind::OrderUpTo: return "pq";
    case ObjectiveKind::OupPerProduct: return "oup-per-product";
  }
  return "?";
}

long to_units(double x) {
  if (!std::isfinite(x)) throw DomainError("objective coordinate is not finite");
  return std::max(1L, std::lround(x));
}

namespace {

void expect_dims(std::span<const double> x, std::size_t n, const char* what) {
  if (x.size() != n)
    throw DomainError(std::string(what) + ": expected " + std::to_string(n) + " coordinates, got " +
                      std::to_string(x.size()));
}

}  // namespace

Objective make_rq_objective(const ProductSpec& product, const SimConfig& cfg) {
  return [product, cfg, demand = make_demand_model(product)](std::span<const double> x, std::uint64_t seed) {
    expect_dims(x, 2, "rq objective");
    SimConfig c = cfg;
    c.seed = seed;
    return replicate(product, demand, ContinuousReview{to_units(x[0]), to_units(x[1])}, c).mean_profit;
  };
}

Objective make_pq_objective(const ProductSpec& product, const SimConfig& cfg, long review_period) {
  return [product, cfg, review_period, demand = make_demand_model(product)](std::span<const double> x,
                                                                           std::uint64_t seed) {
    expect_dims(x, 1, "pq objective");
    SimConfig c = cfg;
    c.seed = seed;
    return replicate(product, demand, PeriodicReview{review_period, to_units(x[0])}, c).mean_profit;
  };
}

Objective make_oup_per_product_objective(const Catalog& catalog, const SimConfig& cfg, long review_period) {
  std::vector<DemandModel> demands;
  for (const auto& p : catalog.products()) demands.push_back(make_demand_model(p));
  return [products = catalog.products(), demands, cfg, review_period](std::span<const double> x,
                                                                       std::uint64_t seed) {
    expect_dims(x, products.size(), "oup-per-product objective");
    SimConfig base = cfg;
    base.seed = seed;
    double total = 0.0;
    for (std::size_t i = 0; i < products.size(); ++i)
      total += replicate(products[i], demands[i], PeriodicReview{review_period, to_units(x[i])},
                         product_config(base, i))
                   .mean_profit;
    return total;
  };
}

std::vector<std::string> objective_labels(ObjectiveKind kind, const Catalog& catalog) {
  switch (kind) {
    case ObjectiveKind::ReorderQuantity: return {"reorder_point", "order_quantity"};
    case ObjectiveKind::OrderUpTo: return {"order_up_to"};
    case ObjectiveKind::OupPerProduct: {
      std::vector<std::string> labels;
      for (const auto& p : catalog.products()) labels.push_back("oup_" + p.name());
      return labels;
    }
  }
  return {};
}

PolicyTable eoq_policy_table(const Catalog& catalog, ObjectiveKind kind, long review_period) {
  PolicyTable out;
  for (const auto& p : catalog.products()) {
    const auto report = make_eoq_report(p);
    if (kind == ObjectiveKind::ReorderQuantity) {
      out[p.name()] = ContinuousReview{to_units(report.reorder_point), to_units(report.eoq)};
    } else {
      const double horizon = static_cast<double>(review_period + p.lead_time());
      const double ss = safety_stock(report.z_score, p.daily_order_size_std(),
                                     static_cast<double>(p.lead_time()), static_cast<double>(review_period));
      out[p.name()] = PeriodicReview{review_period,
                                     to_units(make_demand_model(p).mean_daily_demand() * horizon + ss)};
    }
  }
  return out;
}

PeriodicReview tune_periodic_by_sweep(const ProductSpec& product, const SimConfig& cfg, long lo, long hi,
                                      long step, long review_period) {
  const auto points = sweep_oup(product, make_demand_model(product), cfg, lo, hi, step, review_period);
  const auto best = std::max_element(points.begin(), points.end(), [](const SweepPoint& a, const SweepPoint& b) {
    return a.stats.mean_profit < b.stats.mean_profit;
  });
  return {review_period, best->order_up_to};
}

ContinuousReview tune_continuous_by_bo(const ProductSpec& product, const SimConfig& cfg,
                                       const std::vector<Bound>& box, int budget, int initial_design,
                                       std::uint64_t bo_seed) {
  BoConfig bc;
  bc.bounds = box;
  bc.budget = budget;
  bc.initial_design = initial_design;
  bc.seed = bo_seed;
  bc.objective_seed = cfg.seed;
  const auto result = bo_run(make_rq_objective(product, cfg), bc);
  if (result.aborted) throw NumericalError("rq tuning aborted: " + result.abort_reason);
  return {to_units(result.best_x[0]), to_units(result.best_x[1])};
}

}  // namespace invopt
