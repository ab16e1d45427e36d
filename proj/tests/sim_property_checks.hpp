#pragma once

#include <cstdint>
#include <sstream>
#include <string>

#include "invopt/catalog.hpp"
#include "invopt/simengine.hpp"
#include "invopt/stochastic.hpp"

namespace invopt::test {

struct PropertyCase {
  ProductSpec product;
  DemandModel demand;
  PolicyParams policy;
  SimConfig cfg;
  std::uint64_t stream = 0;
};

inline double draw(RngStream& r, double lo, double hi) { return lo + (hi - lo) * r.uniform(); }
inline long draw_int(RngStream& r, long lo, long hi) {
  return lo + static_cast<long>(r.uniform() * static_cast<double>(hi - lo + 1));
}

inline PropertyCase random_case(RngStream& r) {
  ProductFields f;
  f.name = "Rand";
  f.purchase_cost = draw(r, 0.5, 50);
  f.selling_price = f.purchase_cost * draw(r, 0.8, 3.0);
  f.lead_time = draw_int(r, 0, 25);
  f.unit_size = 1.0;
  f.starting_stock = draw_int(r, 0, 4000);
  f.daily_order_size_mean = draw(r, 1, 400);
  f.daily_order_size_std = f.daily_order_size_mean * draw(r, 0, 0.8);
  f.order_cost = draw(r, 1, 2000);
  f.holding_cost = draw(r, 0.1, 40);
  f.order_probability = r.uniform() < 0.1 ? (r.uniform() < 0.5 ? 0.0 : 1.0) : draw(r, 0.05, 1.0);
  f.lead_time_demand = f.daily_order_size_mean * f.order_probability * static_cast<double>(f.lead_time);
  f.annual_demand = f.daily_order_size_mean * f.order_probability * 365.0;
  ProductSpec product(f);
  const auto demand = make_demand_model(product);

  PolicyParams policy;
  if (r.uniform() < 0.5)
    policy = PeriodicReview{draw_int(r, 1, 60), draw_int(r, 1, 8000)};
  else
    policy = ContinuousReview{draw_int(r, 1, 4000), draw_int(r, 1, 6000)};

  SimConfig cfg;
  cfg.horizon = draw_int(r, 1, 400);
  cfg.replications = 1;
  cfg.seed = r.next_u64();
  cfg.lead_time_mode = r.uniform() < 0.5 ? LeadTimeMode::Deterministic : LeadTimeMode::MeetOrDelay;
  cfg.delay_factor = draw(r, 1.05, 3.0);
  cfg.unmet_demand = r.uniform() < 0.7 ? UnmetDemand::LostSales : UnmetDemand::Backorder;
  cfg.threads = 1;
  return {product, demand, policy, cfg, r.next_u64() % 1000};
}

// Empty string when every property holds for this run, otherwise a description.
inline std::string check_run_properties(const PropertyCase& c) {
  RngStream rng(c.cfg.seed, c.stream);
  const auto run = simulate_once(c.product, c.demand, c.policy, c.cfg, rng, true);
  const auto& t = run.totals;
  const auto& l = run.ledger;
  std::ostringstream bad;

  if (l.annual_profit != l.revenue - l.product_costs - l.ordering_costs - l.holding_costs)
    bad << "ledger identity; ";
  if (t.units_sold + t.units_unmet != t.units_demanded) bad << "demand split totals; ";

  long demanded = 0, sold = 0, unmet = 0, received = 0, ordered = 0, orders = 0;
  double on_hand_sum = 0.0;
  long prev_on_hand = c.product.starting_stock();
  long prev_backlog = 0;
  for (const auto& d : run.days) {
    if (d.sold + d.unmet != d.demand) bad << "demand split day " << d.day << "; ";
    if (d.on_hand_end < 0) bad << "negative on-hand day " << d.day << "; ";
    if (c.cfg.unmet_demand == UnmetDemand::LostSales && d.backlog != 0) bad << "backlog in lost-sales; ";
    const long filled =
        c.cfg.unmet_demand == UnmetDemand::Backorder ? prev_backlog + d.unmet - d.backlog : 0;
    if (prev_on_hand + d.receipt - d.sold - filled != d.on_hand_end) bad << "day flow " << d.day << "; ";
    demanded += d.demand;
    sold += d.sold;
    unmet += d.unmet;
    received += d.receipt;
    ordered += d.order_placed;
    orders += d.order_placed > 0 ? 1 : 0;
    on_hand_sum += static_cast<double>(d.on_hand_end);
    prev_on_hand = d.on_hand_end;
    prev_backlog = d.backlog;
  }
  if (demanded != t.units_demanded || sold != t.units_sold || unmet != t.units_unmet) bad << "day sums; ";
  if (received != t.units_received || ordered != t.units_ordered || orders != t.orders_placed)
    bad << "order sums; ";
  if (on_hand_sum != t.on_hand_sum) bad << "on-hand sum; ";
  if (c.product.starting_stock() + t.units_received - t.units_sold - t.backlog_filled != t.final_on_hand)
    bad << "stock conservation; ";
  if (c.cfg.unmet_demand == UnmetDemand::LostSales && t.units_lost != t.units_unmet) bad << "lost units; ";
  if (c.cfg.unmet_demand == UnmetDemand::Backorder && t.units_unmet - t.backlog_filled != t.final_backlog)
    bad << "backlog balance; ";
  const double revenue = static_cast<double>(t.units_sold + t.backlog_filled) * c.product.selling_price();
  if (revenue != l.revenue) bad << "revenue; ";
  return bad.str();
}

inline long served(const SimRun& run) { return run.totals.units_sold + run.totals.backlog_filled; }

// Raising the order-up-to level with the same random numbers never lowers units served.
inline std::string check_oup_monotone(const PropertyCase& c, long raise) {
  const auto* p = std::get_if<PeriodicReview>(&c.policy);
  if (!p) return {};
  PeriodicReview hi = *p;
  hi.order_up_to += raise;
  RngStream a(c.cfg.seed, c.stream), b(c.cfg.seed, c.stream);
  const long base = served(simulate_once(c.product, c.demand, *p, c.cfg, a, false));
  const long more = served(simulate_once(c.product, c.demand, hi, c.cfg, b, false));
  if (more < base) {
    std::ostringstream o;
    o << "OUP monotonicity: S=" << p->order_up_to << " sold " << base << ", S+" << raise << " sold " << more;
    return o.str();
  }
  return {};
}

// Same question for the order quantity of a continuous-review policy. This one is
// not a pathwise property: a smaller Q can trigger an extra order earlier.
inline std::string check_q_monotone(const PropertyCase& c, long raise) {
  const auto* p = std::get_if<ContinuousReview>(&c.policy);
  if (!p) return {};
  ContinuousReview hi = *p;
  hi.order_quantity += raise;
  RngStream a(c.cfg.seed, c.stream), b(c.cfg.seed, c.stream);
  const long base = served(simulate_once(c.product, c.demand, *p, c.cfg, a, false));
  const long more = served(simulate_once(c.product, c.demand, hi, c.cfg, b, false));
  if (more < base) {
    std::ostringstream o;
    o << "Q monotonicity: Q=" << p->order_quantity << " sold " << base << ", Q+" << raise << " sold " << more;
    return o.str();
  }
  return {};
}

inline bool same_stats(const ReplicationStats& a, const ReplicationStats& b) {
  return a.n == b.n && a.mean_profit == b.mean_profit && a.profit_std == b.profit_std &&
         a.profit_std_error == b.profit_std_error && a.lost_order_fraction == b.lost_order_fraction &&
         a.fill_rate == b.fill_rate && a.mean_orders_placed == b.mean_orders_placed &&
         a.mean_units_sold == b.mean_units_sold && a.mean_on_hand == b.mean_on_hand &&
         a.safety_stock == b.safety_stock;
}

inline std::string check_thread_determinism(PropertyCase c, unsigned threads) {
  c.cfg.replications = 37;
  c.cfg.threads = 1;
  const auto one = replicate_detailed(c.product, c.demand, c.policy, c.cfg);
  c.cfg.threads = threads;
  const auto many = replicate_detailed(c.product, c.demand, c.policy, c.cfg);
  if (!same_stats(one.stats, many.stats) || one.profits != many.profits) return "thread determinism; ";
  return {};
}

struct PropertySummary {
  long cases = 0;
  long failures = 0;
  std::string first_failure;
  long oup_checked = 0;
  long q_checked = 0;
  long q_violations = 0;
  std::string first_q_violation;
};

inline PropertySummary run_property_suite(long cases, std::uint64_t seed) {
  PropertySummary s;
  RngStream r(seed, 0x9a0b);
  for (long i = 0; i < cases; ++i) {
    const auto c = random_case(r);
    const long raise = draw_int(r, 1, 500);
    std::string msg = check_run_properties(c);
    msg += check_oup_monotone(c, raise);
    if (std::holds_alternative<PeriodicReview>(c.policy)) {
      ++s.oup_checked;
    } else {
      ++s.q_checked;
      const auto q = check_q_monotone(c, raise);
      if (!q.empty()) {
        ++s.q_violations;
        if (s.first_q_violation.empty()) s.first_q_violation = q;
      }
    }
    if (i % 10 == 0) msg += check_thread_determinism(c, 2 + static_cast<unsigned>(i % 3));
    ++s.cases;
    if (!msg.empty()) {
      ++s.failures;
      if (s.first_failure.empty()) s.first_failure = "case " + std::to_string(i) + ": " + msg;
    }
  }
  return s;
}

}  // namespace invopt::test
