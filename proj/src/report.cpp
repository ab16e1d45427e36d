#include "invopt/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <ostream>

#include "invopt/csv.hpp"
#include "invopt/errors.hpp"
#include "invopt/stochastic.hpp"

#ifndef INVOPT_VERSION
#define INVOPT_VERSION "0.0.0"
#endif

namespace invopt {

namespace {

std::string money(double v) { return csv::format_fixed(v, 2); }
std::string frac(double v) { return csv::format_fixed(v, 6); }

std::string policy_columns(const PolicyParams& p) {
  if (const auto* pr = std::get_if<PeriodicReview>(&p))
    return "pq," + std::to_string(pr->review_period) + "," + std::to_string(pr->order_up_to) + ",,";
  const auto& cr = std::get<ContinuousReview>(p);
  return "rq,,," + std::to_string(cr.reorder_point) + "," + std::to_string(cr.order_quantity);
}

}  // namespace

std::vector<HistogramBin> emit_histogram(std::span<const double> samples, int bins) {
  if (samples.empty()) throw DomainError("histogram: no samples");
  if (bins < 1) throw DomainError("histogram: bins must be >= 1");
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  const double width = (hi - lo) / bins;
  std::vector<HistogramBin> out(static_cast<std::size_t>(bins));
  for (int b = 0; b < bins; ++b) {
    out[static_cast<std::size_t>(b)].lo = lo + width * b;
    out[static_cast<std::size_t>(b)].hi = b + 1 == bins ? hi : lo + width * (b + 1);
  }
  for (double x : samples) {
    if (!std::isfinite(x)) throw DomainError("histogram: non-finite sample");
    long b = 0;
    if (hi > lo) b = std::min<long>(bins - 1, static_cast<long>(std::floor((x - lo) / (hi - lo) * bins)));
    ++out[static_cast<std::size_t>(b)].count;
  }
  return out;
}

std::string tool_version() { return INVOPT_VERSION; }

std::string manifest_timestamp() {
  const char* env = std::getenv("SOURCE_DATE_EPOCH");
  if (env == nullptr || *env == '\0') return "unset";
  char* end = nullptr;
  const long long secs = std::strtoll(env, &end, 10);
  if (*end != '\0' || secs < 0) return "unset";
  const std::time_t t = static_cast<std::time_t>(secs);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

RunManifest make_manifest(std::string subcommand, std::string catalog_path, std::uint64_t seed,
                          std::vector<std::pair<std::string, std::string>> config) {
  RunManifest m;
  m.subcommand = std::move(subcommand);
  m.catalog_path = std::move(catalog_path);
  m.seed = seed;
  m.config = std::move(config);
  m.tool_version = tool_version();
  m.rng_algorithm = std::string(RngStream::kAlgorithm);
  m.timestamp = manifest_timestamp();
  return m;
}

void write_manifest(std::ostream& out, const RunManifest& m) {
  out << "# tool=invopt " << m.tool_version << '\n'
      << "# subcommand=" << m.subcommand << '\n'
      << "# catalog=" << m.catalog_path << '\n'
      << "# seed=" << m.seed << '\n'
      << "# rng=" << m.rng_algorithm << '\n'
      << "# timestamp=" << m.timestamp << '\n';
  for (const auto& [k, v] : m.config) out << "# " << k << '=' << v << '\n';
}

void write_eoq_csv(std::ostream& out, const Catalog& catalog, const std::vector<EoqReport>& reports) {
  out << "metric";
  for (const auto& p : catalog.products()) out << ',' << p.name();
  out << '\n';
  const auto row = [&](const char* label, auto&& cell) {
    out << label;
    for (const auto& r : reports) out << ',' << cell(r);
    out << '\n';
  };
  row("AnnualDemand", [](const EoqReport& r) { return csv::format_fixed(r.annual_demand, 0); });
  row("EOQ", [](const EoqReport& r) { return csv::format_fixed(std::round(r.eoq), 0); });
  row("TotalAnnualCost", [](const EoqReport& r) { return money(r.total_annual_cost); });
  row("TotalAnnualProfit", [](const EoqReport& r) { return money(r.total_annual_profit); });
  row("ExpectedProportionOfLostOrder",
      [](const EoqReport& r) { return csv::format_fixed(r.expected_lost_order_proportion, 4); });
  row("ServiceLevel", [](const EoqReport& r) { return csv::format_fixed(r.service_level, 4); });
  row("ZScore", [](const EoqReport& r) { return csv::format_fixed(r.z_score, 4); });
  row("SafetyStock", [](const EoqReport& r) { return csv::format_fixed(r.safety_stock, 0); });
  row("ReorderPoint", [](const EoqReport& r) { return csv::format_fixed(r.reorder_point, 0); });
}

void write_risk_csv(std::ostream& out, const std::vector<RiskReport>& rows) {
  out << "product,hcr,sor_service_level,safety_stock,spr_rank,p_meet,ihc,expected_backorders,boc,efr\n";
  for (const auto& r : rows)
    out << r.product << ',' << money(r.hcr) << ',' << csv::format_fixed(r.service_level, 4) << ','
        << csv::format_fixed(r.safety_stock, 0) << ',' << r.spr_rank << ',' << csv::format_fixed(r.p_meet, 2)
        << ',' << money(r.ihc) << ',' << csv::format_fixed(r.expected_backorders, 2) << ',' << money(r.boc)
        << ',' << csv::format_fixed(r.efr, 4) << '\n';
}

void write_trajectory_csv(std::ostream& out, const std::vector<DayRecord>& days) {
  out << "day,demand,sold,unmet,on_hand_end,on_order,order_placed,receipt,backlog\n";
  for (const auto& d : days)
    out << d.day << ',' << d.demand << ',' << d.sold << ',' << d.unmet << ',' << d.on_hand_end << ','
        << d.on_order << ',' << d.order_placed << ',' << d.receipt << ',' << d.backlog << '\n';
}

void write_histogram_csv(std::ostream& out, std::string_view series, const std::vector<HistogramBin>& bins,
                         bool header) {
  if (header) out << "series,bin_lo,bin_hi,count\n";
  for (const auto& b : bins)
    out << series << ',' << csv::format_exact(b.lo) << ',' << csv::format_exact(b.hi) << ',' << b.count << '\n';
}

void write_stats_csv(std::ostream& out, const std::vector<StatsRow>& rows) {
  out << "product," << kPolicyHeader.substr(5)
      << ",replications,mean_profit,profit_std,profit_std_error,lost_order_fraction,fill_rate,"
         "mean_orders_placed,mean_units_sold,mean_on_hand,safety_stock\n";
  for (const auto& r : rows) {
    const auto& s = r.stats;
    out << r.product << ',' << policy_columns(r.policy) << ',' << s.n << ',' << money(s.mean_profit) << ','
        << money(s.profit_std) << ',' << money(s.profit_std_error) << ',' << frac(s.lost_order_fraction) << ','
        << frac(s.fill_rate) << ',' << csv::format_fixed(s.mean_orders_placed, 4) << ','
        << csv::format_fixed(s.mean_units_sold, 2) << ',' << csv::format_fixed(s.mean_on_hand, 2) << ','
        << csv::format_fixed(s.safety_stock, 2) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, std::string_view product, const std::vector<SweepPoint>& points) {
  out << "product,order_up_to,mean_profit,profit_std,profit_std_error,lost_order_fraction,fill_rate,"
         "mean_orders_placed\n";
  for (const auto& p : points)
    out << product << ',' << p.order_up_to << ',' << money(p.stats.mean_profit) << ','
        << money(p.stats.profit_std) << ',' << money(p.stats.profit_std_error) << ','
        << frac(p.stats.lost_order_fraction) << ',' << frac(p.stats.fill_rate) << ','
        << csv::format_fixed(p.stats.mean_orders_placed, 4) << '\n';
}

void write_comparison_csv(std::ostream& out, const PolicyComparison& c) {
  out << "product,pq_order_up_to,rq_reorder_point,rq_order_quantity,pq_mean_profit,pq_profit_std,"
         "pq_lost_order_fraction,rq_mean_profit,rq_profit_std,rq_lost_order_fraction\n";
  const auto cell = [](const PolicyParams& p, int which) -> std::string {
    if (const auto* pr = std::get_if<PeriodicReview>(&p)) return which == 0 ? std::to_string(pr->order_up_to) : "";
    const auto& cr = std::get<ContinuousReview>(p);
    return which == 1 ? std::to_string(cr.reorder_point) : which == 2 ? std::to_string(cr.order_quantity) : "";
  };
  for (const auto& p : c.products)
    out << p.product << ',' << cell(p.periodic, 0) << ',' << cell(p.continuous, 1) << ','
        << cell(p.continuous, 2) << ',' << money(p.periodic_stats.mean_profit) << ','
        << money(p.periodic_stats.profit_std) << ',' << frac(p.periodic_stats.lost_order_fraction) << ','
        << money(p.continuous_stats.mean_profit) << ',' << money(p.continuous_stats.profit_std) << ','
        << frac(p.continuous_stats.lost_order_fraction) << '\n';
  out << "TOTAL,,,," << money(c.total_periodic) << ",,," << money(c.total_continuous) << ",,\n";
  out << "# relative_difference=" << csv::format_fixed(c.relative_difference, 6) << '\n';
}

void write_bo_history_csv(std::ostream& out, const std::vector<std::string>& labels,
                          const std::vector<BoStep>& history) {
  out << "iteration,phase";
  for (const auto& l : labels) out << ',' << l;
  out << ",y,incumbent,acquisition\n";
  for (const auto& s : history) {
    out << s.iteration << ',' << (s.initial ? "initial" : "acquisition");
    for (double x : s.x) out << ',' << csv::format_exact(x);
    out << ',' << csv::format_exact(s.y) << ',' << csv::format_exact(s.incumbent) << ','
        << csv::format_exact(s.acquisition) << '\n';
  }
}

void write_sensitivity_csv(std::ostream& out, const std::vector<SensitivityRow>& rows) {
  out << "variable,delta,product,profit,profit_std,lost_orders,safety_stock,note\n";
  for (const auto& r : rows)
    out << r.variable << ',' << csv::format_exact(r.delta) << ',' << r.product << ','
        << money(r.outputs.profit) << ',' << money(r.outputs.profit_std) << ','
        << frac(r.outputs.lost_orders) << ',' << csv::format_fixed(r.outputs.safety_stock, 2) << ','
        << (r.requires_resim ? "profit_std,lost_orders require resimulation" : "") << '\n';
}

PolicyTable parse_policy_table(std::istream& in, const std::string& source) {
  const auto table = csv::read(in, source);
  if (table.header.empty()) throw ConfigError("params: " + source + " is empty");
  if (table.header != csv::split(kPolicyHeader))
    throw ParseError(source, table.header_line, "header must be exactly '" + std::string(kPolicyHeader) + "'");
  PolicyTable out;
  for (const auto& row : table.rows) {
    const auto& c = row.cells;
    const auto integer = [&](std::size_t i, std::string_view field) {
      return static_cast<long>(csv::parse_integer(c[i], source, row.line, field));
    };
    PolicyParams p;
    if (c[1] == "pq") p = PeriodicReview{integer(2, "review_period"), integer(3, "order_up_to")};
    else if (c[1] == "rq") p = ContinuousReview{integer(4, "reorder_point"), integer(5, "order_quantity")};
    else throw ParseError(source, row.line, "policy must be pq or rq, got '" + c[1] + "'");
    try {
      validate_policy(p);
    } catch (const ConfigError& e) {
      throw ParseError(source, row.line, c[0] + ": " + e.what());
    }
    if (!out.emplace(c[0], p).second) throw ParseError(source, row.line, "duplicate product " + c[0]);
  }
  return out;
}

PolicyTable load_policy_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return parse_policy_table(in, path);
}

void write_policy_table(std::ostream& out, const PolicyTable& table) {
  out << kPolicyHeader << '\n';
  for (const auto& [name, p] : table) out << name << ',' << policy_columns(p) << '\n';
}

std::vector<Bound> parse_bounds(std::istream& in, const std::string& source) {
  const auto table = csv::read(in, source);
  if (table.header != csv::split(kBoundsHeader))
    throw ParseError(source, table.header_line, "header must be exactly '" + std::string(kBoundsHeader) + "'");
  std::vector<Bound> out;
  for (const auto& row : table.rows) {
    const auto dim = csv::parse_integer(row.cells[0], source, row.line, "dimension");
    if (dim != static_cast<long long>(out.size()))
      throw ParseError(source, row.line, "dimensions must be listed as 0, 1, 2, ... in order");
    const double lo = csv::parse_double(row.cells[1], source, row.line, "lo");
    const double hi = csv::parse_double(row.cells[2], source, row.line, "hi");
    if (!(lo < hi)) throw ParseError(source, row.line, "lo must be < hi");
    out.push_back({lo, hi});
  }
  if (out.empty()) throw ConfigError("bounds: " + source + " lists no dimensions");
  return out;
}

std::vector<Bound> load_bounds(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return parse_bounds(in, path);
}

}  // namespace invopt
