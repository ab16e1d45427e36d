#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "invopt/bayesopt.hpp"
#include "invopt/catalog.hpp"
#include "invopt/simengine.hpp"

namespace invopt {

// Simulated-profit objectives for bo_run. The seed passed by bo_run replaces
// cfg.seed, so every evaluation in one run shares the same random numbers.
// Coordinates are rounded to whole units and held at >= 1.
enum class ObjectiveKind {
  ReorderQuantity,  // "rq": x = (r, Q) for one product
  OrderUpTo,        // "pq": x = (OUP) for one product
  OupPerProduct,    // "oup-per-product": x = one OUP per catalog product, summed profit
};

ObjectiveKind parse_objective_kind(std::string_view text);  // throws ConfigError
std::string objective_kind_name(ObjectiveKind kind);

long to_units(double x);

Objective make_rq_objective(const ProductSpec& product, const SimConfig& cfg);
Objective make_pq_objective(const ProductSpec& product, const SimConfig& cfg, long review_period = 30);
Objective make_oup_per_product_objective(const Catalog& catalog, const SimConfig& cfg,
                                         long review_period = 30);

// Coordinate names, in order, for history reports.
std::vector<std::string> objective_labels(ObjectiveKind kind, const Catalog& catalog);

// Starting policies from the closed-form analytics: (r, Q) = (reorder point,
// EOQ); OUP = mean demand over review period + lead time, plus safety stock.
PolicyTable eoq_policy_table(const Catalog& catalog, ObjectiveKind kind, long review_period = 30);

// Best OUP on the grid lo..hi (step), simulated under cfg.
PeriodicReview tune_periodic_by_sweep(const ProductSpec& product, const SimConfig& cfg, long lo,
                                      long hi, long step, long review_period = 30);

// (r, Q) chosen by bo_run on the rq objective over the given box.
ContinuousReview tune_continuous_by_bo(const ProductSpec& product, const SimConfig& cfg,
                                       const std::vector<Bound>& box, int budget, int initial_design,
                                       std::uint64_t bo_seed);

}  // namespace invopt
