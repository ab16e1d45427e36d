#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "invopt/stochastic.hpp"

namespace invopt {

class Catalog;
class ProductSpec;

// (p,Q): every review_period days, order up to order_up_to.
struct PeriodicReview {
  long review_period = 30;
  long order_up_to = 0;
  bool operator==(const PeriodicReview&) const = default;
};

// (r,Q): whenever inventory position <= reorder_point, order order_quantity.
struct ContinuousReview {
  long reorder_point = 0;
  long order_quantity = 0;
  bool operator==(const ContinuousReview&) const = default;
};

using PolicyParams = std::variant<PeriodicReview, ContinuousReview>;

void validate_policy(const PolicyParams& policy);  // throws ConfigError
std::string policy_kind(const PolicyParams& policy);  // "pq" or "rq"

enum class UnmetDemand { LostSales, Backorder };

struct SimConfig {
  long horizon = 365;
  long replications = 10000;
  std::uint64_t seed = 0;
  LeadTimeMode lead_time_mode = LeadTimeMode::Deterministic;
  double delay_factor = 1.5;
  UnmetDemand unmet_demand = UnmetDemand::LostSales;
  // Worker threads for replications; 0 = hardware concurrency. Never changes results.
  unsigned threads = 0;

  void validate() const;  // throws ConfigError
};

// Lead time for a product under cfg: nominal from the catalog, on-time
// probability from the catalog's probability column in MeetOrDelay mode.
LeadTimeModel lead_time_model(const ProductSpec& product, const SimConfig& cfg);

struct DayRecord {
  long day = 0;
  long demand = 0;
  long sold = 0;    // served from stock on the day the demand arrived
  long unmet = 0;   // lost (LostSales) or queued (Backorder)
  long on_hand_end = 0;
  long on_order = 0;
  long order_placed = 0;
  long receipt = 0;
  long backlog = 0;
};

struct ProfitLedger {
  double revenue = 0.0;
  double product_costs = 0.0;
  double ordering_costs = 0.0;
  double holding_costs = 0.0;
  double annual_profit = 0.0;
};

struct RunTotals {
  long units_demanded = 0;
  long units_sold = 0;        // served on arrival
  long backlog_filled = 0;    // Backorder mode: queued demand served later
  long units_unmet = 0;
  long units_lost = 0;        // never served within the horizon
  long units_ordered = 0;
  long orders_placed = 0;
  long units_received = 0;
  long final_on_hand = 0;
  long final_backlog = 0;
  long receipts = 0;
  double on_hand_sum = 0.0;          // sum of end-of-day on-hand
  double stock_at_receipt_sum = 0.0;  // on-hand just before each receipt
};

struct SimRun {
  std::vector<DayRecord> days;  // empty unless requested
  ProfitLedger ledger;
  RunTotals totals;
};

// One run of the day loop. Per day: receive arrivals (filling any backlog
// first), draw demand, serve from stock, review the policy against inventory
// position (on-hand + on-order - backlog), accrue holding cost on end-of-day
// on-hand at holding_cost / 365. Orders placed on day d arrive at the start of
// day d + lead time (immediately if the lead time is zero). Each day consumes
// kDemandDraws + kLeadTimeDraws raw draws from rng, whatever the policy does.
SimRun simulate_once(const ProductSpec& product, const DemandModel& demand, const PolicyParams& policy,
                     const SimConfig& cfg, RngStream& rng, bool record_days = true);

struct ReplicationStats {
  long n = 0;
  double mean_profit = 0.0;
  double profit_std = 0.0;        // sample standard deviation
  double profit_std_error = 0.0;
  double lost_order_fraction = 0.0;  // total lost / total demand
  double fill_rate = 0.0;            // total served on arrival / total demand
  double mean_orders_placed = 0.0;
  double mean_units_sold = 0.0;
  double mean_units_demanded = 0.0;
  double mean_on_hand = 0.0;
  double safety_stock = 0.0;  // mean on-hand just before a receipt
};

struct ReplicationOutcome {
  ReplicationStats stats;
  std::vector<double> profits;         // per replication, in replication order
  std::vector<double> lost_fractions;  // per replication
  std::vector<long> units_sold;        // per replication (served, incl. backlog fills)
};

// Replication i uses RngStream(cfg.seed, i). The reduction runs in replication
// order, so the result is bit-identical for any thread count.
ReplicationOutcome replicate_detailed(const ProductSpec& product, const DemandModel& demand,
                                      const PolicyParams& policy, const SimConfig& cfg);
ReplicationStats replicate(const ProductSpec& product, const DemandModel& demand,
                           const PolicyParams& policy, const SimConfig& cfg);

struct SweepPoint {
  long order_up_to = 0;
  ReplicationStats stats;
};

// One replicate() per order-up-to level in [lo, hi] with the given step, all
// sharing cfg.seed (common random numbers).
std::vector<SweepPoint> sweep_oup(const ProductSpec& product, const DemandModel& demand,
                                  const SimConfig& cfg, long lo, long hi, long step,
                                  long review_period = 30);

using PolicyTable = std::map<std::string, PolicyParams>;

struct ProductComparison {
  std::string product;
  PolicyParams periodic;
  PolicyParams continuous;
  ReplicationStats periodic_stats;
  ReplicationStats continuous_stats;
};

struct PolicyComparison {
  std::vector<ProductComparison> products;
  double total_periodic = 0.0;
  double total_continuous = 0.0;
  double relative_difference = 0.0;  // (continuous - periodic) / periodic
};

// Seed for the i-th product of a catalog; both policies of a product share it.
SimConfig product_config(const SimConfig& cfg, std::size_t product_index);

PolicyComparison compare_policies(const Catalog& catalog, const SimConfig& cfg,
                                  const PolicyTable& periodic, const PolicyTable& continuous);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

// Sample average and standard error s / sqrt(S). Throws DomainError on empty input.
McEstimate mc_estimate(std::span<const double> samples);

}  // namespace invopt
