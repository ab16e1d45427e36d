#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "invopt/bayesopt.hpp"
#include "invopt/catalog.hpp"
#include "invopt/eoq.hpp"
#include "invopt/riskmetrics.hpp"
#include "invopt/sensitivity.hpp"
#include "invopt/simengine.hpp"

namespace invopt {

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;
  long count = 0;
};

// Equal-width bins spanning [min, max]; the top edge belongs to the last bin.
// If every sample is equal, all of them land in the first bin.
// Throws DomainError on empty input or bins < 1.
std::vector<HistogramBin> emit_histogram(std::span<const double> samples, int bins);

// Provenance embedded in every report as leading "# key=value" lines.
struct RunManifest {
  std::string subcommand;
  std::string catalog_path;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> config;
  std::string tool_version;
  std::string rng_algorithm;
  std::string timestamp;
};

std::string tool_version();
// UTC time from SOURCE_DATE_EPOCH when set, otherwise "unset"; never the wall clock.
std::string manifest_timestamp();
RunManifest make_manifest(std::string subcommand, std::string catalog_path, std::uint64_t seed,
                          std::vector<std::pair<std::string, std::string>> config);
void write_manifest(std::ostream& out, const RunManifest& manifest);

void write_eoq_csv(std::ostream& out, const Catalog& catalog, const std::vector<EoqReport>& reports);
void write_risk_csv(std::ostream& out, const std::vector<RiskReport>& rows);
void write_trajectory_csv(std::ostream& out, const std::vector<DayRecord>& days);
void write_histogram_csv(std::ostream& out, std::string_view series, const std::vector<HistogramBin>& bins,
                         bool header = true);

struct StatsRow {
  std::string product;
  PolicyParams policy;
  ReplicationStats stats;
};
void write_stats_csv(std::ostream& out, const std::vector<StatsRow>& rows);
void write_sweep_csv(std::ostream& out, std::string_view product, const std::vector<SweepPoint>& points);
void write_comparison_csv(std::ostream& out, const PolicyComparison& comparison);
void write_bo_history_csv(std::ostream& out, const std::vector<std::string>& labels,
                          const std::vector<BoStep>& history);
void write_sensitivity_csv(std::ostream& out, const std::vector<SensitivityRow>& rows);

// Policy parameter files: name,policy,review_period,order_up_to,reorder_point,order_quantity.
// policy is pq or rq; fields the policy does not use are left empty.
inline constexpr std::string_view kPolicyHeader =
    "name,policy,review_period,order_up_to,reorder_point,order_quantity";
PolicyTable parse_policy_table(std::istream& in, const std::string& source);
PolicyTable load_policy_table(const std::string& path);
void write_policy_table(std::ostream& out, const PolicyTable& table);

// Bounds files: dimension,lo,hi with one row per dimension, in order.
inline constexpr std::string_view kBoundsHeader = "dimension,lo,hi";
std::vector<Bound> parse_bounds(std::istream& in, const std::string& source);
std::vector<Bound> load_bounds(const std::string& path);

}  // namespace invopt
