#include "invopt/simengine.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "invopt/catalog.hpp"
#include "invopt/errors.hpp"

namespace invopt {

namespace {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct RepRecord {
  double profit = 0.0;
  long demanded = 0;
  long served = 0;
  long sold_on_arrival = 0;
  long lost = 0;
  long orders = 0;
  double on_hand_sum = 0.0;
  double stock_at_receipt_sum = 0.0;
  long receipts = 0;
};

unsigned worker_count(unsigned requested, long jobs) {
  unsigned n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return static_cast<unsigned>(std::clamp<long>(n, 1, std::max<long>(1, jobs)));
}

}  // namespace

void validate_policy(const PolicyParams& policy) {
  std::visit(
      [](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PeriodicReview>) {
          if (p.review_period <= 0) throw ConfigError("review_period must be > 0");
          if (p.order_up_to <= 0) throw ConfigError("order_up_to must be > 0");
        } else {
          if (p.reorder_point <= 0) throw ConfigError("reorder_point must be > 0");
          if (p.order_quantity <= 0) throw ConfigError("order_quantity must be > 0");
        }
      },
      policy);
}

std::string policy_kind(const PolicyParams& policy) {
  return std::holds_alternative<PeriodicReview>(policy) ? "pq" : "rq";
}

void SimConfig::validate() const {
  if (horizon < 1) throw ConfigError("horizon must be >= 1");
  if (replications < 1) throw ConfigError("replications must be >= 1");
  if (lead_time_mode == LeadTimeMode::MeetOrDelay && !(delay_factor > 1.0))
    throw ConfigError("delay factor must be > 1");
}

LeadTimeModel lead_time_model(const ProductSpec& product, const SimConfig& cfg) {
  LeadTimeModel m;
  m.nominal = product.lead_time();
  m.mode = cfg.lead_time_mode;
  m.p_meet = product.order_probability();
  m.delay_factor = cfg.delay_factor;
  return m;
}

SimRun simulate_once(const ProductSpec& product, const DemandModel& demand, const PolicyParams& policy,
                     const SimConfig& cfg, RngStream& rng, bool record_days) {
  cfg.validate();
  validate_policy(policy);
  const auto lead_model = lead_time_model(product, cfg);
  const bool backorder = cfg.unmet_demand == UnmetDemand::Backorder;
  const auto* periodic = std::get_if<PeriodicReview>(&policy);
  const auto* continuous = std::get_if<ContinuousReview>(&policy);

  SimRun run;
  if (record_days) run.days.reserve(static_cast<std::size_t>(cfg.horizon));
  auto& t = run.totals;

  std::vector<long> arrivals(static_cast<std::size_t>(cfg.horizon), 0);
  long on_hand = product.starting_stock();
  long on_order = 0;
  long backlog = 0;
  long long on_hand_days = 0;

  const auto receive = [&](long qty) {
    t.stock_at_receipt_sum += static_cast<double>(on_hand);
    ++t.receipts;
    t.units_received += qty;
    on_hand += qty;
    if (backlog > 0) {
      const long fill = std::min(backlog, on_hand);
      on_hand -= fill;
      backlog -= fill;
      t.backlog_filled += fill;
    }
  };

  for (long day = 0; day < cfg.horizon; ++day) {
    DayRecord rec;
    rec.day = day;

    const long arriving = arrivals[static_cast<std::size_t>(day)];
    if (arriving > 0) {
      on_order -= arriving;
      receive(arriving);
      rec.receipt = arriving;
    }

    const long d = sample_daily_demand(demand, rng);
    const long lead = sample_lead_time(lead_model, rng);
    const long sold = std::min(d, on_hand);
    on_hand -= sold;
    const long unmet = d - sold;
    if (backorder) backlog += unmet;
    t.units_demanded += d;
    t.units_sold += sold;
    t.units_unmet += unmet;

    const long position = on_hand + on_order - backlog;
    long qty = 0;
    if (periodic) {
      if (day % periodic->review_period == 0 && position < periodic->order_up_to)
        qty = periodic->order_up_to - position;
    } else if (position <= continuous->reorder_point) {
      qty = continuous->order_quantity;
    }
    if (qty > 0) {
      ++t.orders_placed;
      t.units_ordered += qty;
      if (lead == 0) {
        receive(qty);
        rec.receipt += qty;
      } else {
        on_order += qty;
        if (day + lead < cfg.horizon) arrivals[static_cast<std::size_t>(day + lead)] += qty;
      }
    }

    on_hand_days += on_hand;
    if (record_days) {
      rec.demand = d;
      rec.sold = sold;
      rec.unmet = unmet;
      rec.on_hand_end = on_hand;
      rec.on_order = on_order;
      rec.order_placed = qty;
      rec.backlog = backlog;
      run.days.push_back(rec);
    }
  }

  t.final_on_hand = on_hand;
  t.final_backlog = backlog;
  t.units_lost = backorder ? backlog : t.units_unmet;
  t.on_hand_sum = static_cast<double>(on_hand_days);

  auto& l = run.ledger;
  l.revenue = static_cast<double>(t.units_sold + t.backlog_filled) * product.selling_price();
  l.product_costs = static_cast<double>(t.units_ordered) * product.purchase_cost();
  l.ordering_costs = static_cast<double>(t.orders_placed) * product.order_cost();
  l.holding_costs = static_cast<double>(on_hand_days) * product.holding_cost() / kDaysPerYear;
  l.annual_profit = l.revenue - l.product_costs - l.ordering_costs - l.holding_costs;
  return run;
}

ReplicationOutcome replicate_detailed(const ProductSpec& product, const DemandModel& demand,
                                      const PolicyParams& policy, const SimConfig& cfg) {
  cfg.validate();
  validate_policy(policy);
  const long n = cfg.replications;
  std::vector<RepRecord> records(static_cast<std::size_t>(n));

  const auto run_range = [&](long begin, long end) {
    for (long i = begin; i < end; ++i) {
      RngStream rng(cfg.seed, static_cast<std::uint64_t>(i));
      const auto run = simulate_once(product, demand, policy, cfg, rng, false);
      auto& r = records[static_cast<std::size_t>(i)];
      r.profit = run.ledger.annual_profit;
      r.demanded = run.totals.units_demanded;
      r.served = run.totals.units_sold + run.totals.backlog_filled;
      r.sold_on_arrival = run.totals.units_sold;
      r.lost = run.totals.units_lost;
      r.orders = run.totals.orders_placed;
      r.on_hand_sum = run.totals.on_hand_sum;
      r.stock_at_receipt_sum = run.totals.stock_at_receipt_sum;
      r.receipts = run.totals.receipts;
    }
  };

  const unsigned workers = worker_count(cfg.threads, n);
  if (workers == 1) {
    run_range(0, n);
  } else {
    std::vector<std::jthread> pool;
    const long chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const long begin = w * chunk;
      const long end = std::min(n, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(run_range, begin, end);
    }
  }

  ReplicationOutcome out;
  out.profits.reserve(records.size());
  out.lost_fractions.reserve(records.size());
  out.units_sold.reserve(records.size());

  // Shifted sums: identical samples give exactly zero spread.
  const double shift = records.front().profit;
  CompensatedSum dev, dev2, on_hand, at_receipt, orders, sold, demanded;
  long long total_demand = 0, total_lost = 0, total_on_arrival = 0, receipts = 0;
  for (const auto& r : records) {
    const double delta = r.profit - shift;
    dev.add(delta);
    dev2.add(delta * delta);
    on_hand.add(r.on_hand_sum);
    at_receipt.add(r.stock_at_receipt_sum);
    orders.add(static_cast<double>(r.orders));
    sold.add(static_cast<double>(r.served));
    demanded.add(static_cast<double>(r.demanded));
    total_demand += r.demanded;
    total_lost += r.lost;
    total_on_arrival += r.sold_on_arrival;
    receipts += r.receipts;
    out.profits.push_back(r.profit);
    out.lost_fractions.push_back(r.demanded > 0 ? static_cast<double>(r.lost) / static_cast<double>(r.demanded)
                                                : 0.0);
    out.units_sold.push_back(r.served);
  }

  auto& s = out.stats;
  const double dn = static_cast<double>(n);
  s.n = n;
  s.mean_profit = shift + dev.value() / dn;
  if (n > 1) {
    const double var = std::max(0.0, (dev2.value() - dev.value() * dev.value() / dn) / (dn - 1.0));
    s.profit_std = std::sqrt(var);
  }
  s.profit_std_error = s.profit_std / std::sqrt(dn);
  s.lost_order_fraction =
      total_demand > 0 ? static_cast<double>(total_lost) / static_cast<double>(total_demand) : 0.0;
  s.fill_rate =
      total_demand > 0 ? static_cast<double>(total_on_arrival) / static_cast<double>(total_demand) : 1.0;
  s.mean_orders_placed = orders.value() / dn;
  s.mean_units_sold = sold.value() / dn;
  s.mean_units_demanded = demanded.value() / dn;
  s.mean_on_hand = on_hand.value() / (dn * static_cast<double>(cfg.horizon));
  s.safety_stock = receipts > 0 ? at_receipt.value() / static_cast<double>(receipts) : 0.0;
  return out;
}

ReplicationStats replicate(const ProductSpec& product, const DemandModel& demand,
                           const PolicyParams& policy, const SimConfig& cfg) {
  return replicate_detailed(product, demand, policy, cfg).stats;
}

std::vector<SweepPoint> sweep_oup(const ProductSpec& product, const DemandModel& demand,
                                  const SimConfig& cfg, long lo, long hi, long step,
                                  long review_period) {
  if (lo > hi) throw ConfigError("sweep range is empty");
  if (step <= 0) throw ConfigError("sweep step must be > 0");
  std::vector<SweepPoint> out;
  for (long oup = lo; oup <= hi; oup += step) {
    out.push_back({oup, replicate(product, demand, PeriodicReview{review_period, oup}, cfg)});
  }
  return out;
}

SimConfig product_config(const SimConfig& cfg, std::size_t product_index) {
  SimConfig c = cfg;
  c.seed = derive_seed(cfg.seed, product_index);
  return c;
}

PolicyComparison compare_policies(const Catalog& catalog, const SimConfig& cfg,
                                  const PolicyTable& periodic, const PolicyTable& continuous) {
  PolicyComparison out;
  CompensatedSum total_p, total_c;
  for (std::size_t i = 0; i < catalog.products().size(); ++i) {
    const auto& product = catalog.products()[i];
    const auto p = periodic.find(product.name());
    const auto c = continuous.find(product.name());
    if (p == periodic.end() || c == continuous.end())
      throw ConfigError("missing policy parameters for product " + product.name());
    const auto demand = make_demand_model(product);
    const auto pcfg = product_config(cfg, i);
    ProductComparison row{product.name(), p->second, c->second, {}, {}};
    row.periodic_stats = replicate(product, demand, p->second, pcfg);
    row.continuous_stats = replicate(product, demand, c->second, pcfg);
    total_p.add(row.periodic_stats.mean_profit);
    total_c.add(row.continuous_stats.mean_profit);
    out.products.push_back(std::move(row));
  }
  out.total_periodic = total_p.value();
  out.total_continuous = total_c.value();
  out.relative_difference = out.total_periodic != 0.0
                                ? (out.total_continuous - out.total_periodic) / std::fabs(out.total_periodic)
                                : 0.0;
  return out;
}

McEstimate mc_estimate(std::span<const double> samples) {
  if (samples.empty()) throw DomainError("mc_estimate: no samples");
  const double shift = samples.front();
  CompensatedSum dev, dev2;
  for (const double x : samples) {
    dev.add(x - shift);
    dev2.add((x - shift) * (x - shift));
  }
  const double n = static_cast<double>(samples.size());
  McEstimate e;
  e.mean = shift + dev.value() / n;
  if (samples.size() > 1) {
    const double var = std::max(0.0, (dev2.value() - dev.value() * dev.value() / n) / (n - 1.0));
    e.std_error = std::sqrt(var / n);
  }
  return e;
}

}  // namespace invopt
