#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace invopt {

class ProductSpec;

// Seeded random stream addressed by (seed, stream_id).
//
// Backed by std::mt19937_64 initialised through std::seed_seq from the four
// 32-bit halves of seed and stream_id. Both the engine and seed_seq are fully
// specified by the standard, so sequences are identical on every conforming
// platform. All real-valued transforms below are implemented here rather than
// with <random> distributions, whose algorithms are implementation-defined.
class RngStream {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64/seed_seq";

  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }
  // 53-bit uniform in [0, 1). One raw draw.
  double uniform();
  // Uniform in (0, 1]. One raw draw.
  double uniform_open_low() { return 1.0 - uniform(); }
  // Box-Muller, cosine branch only. Always two raw draws, no cached state.
  double standard_normal();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

// Derives an independent seed for a sub-experiment (e.g. one product of a catalog).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt);

struct LognormalParams {
  double log_mu = 0.0;
  double log_sigma = 0.0;
};

struct Moments {
  double mean = 0.0;
  double std = 0.0;
};

// Closed-form moment matching; throws DomainError when mean <= 0 or std < 0.
LognormalParams fit_lognormal(double mean, double std);
Moments lognormal_moments(const LognormalParams& params);

// Daily demand = Bernoulli(order_probability) x round(Lognormal(log_mu, log_sigma)).
struct DemandModel {
  double order_probability = 0.0;
  double log_mu = 0.0;
  double log_sigma = 0.0;

  Moments order_size() const { return lognormal_moments({log_mu, log_sigma}); }
  double mean_daily_demand() const { return order_probability * order_size().mean; }
};

DemandModel make_demand_model(double order_probability, double size_mean, double size_std);
DemandModel make_demand_model(const ProductSpec& spec);

// Raw draws consumed by each sampler call, regardless of outcome.
inline constexpr int kDemandDraws = 3;
inline constexpr int kLeadTimeDraws = 1;

long sample_daily_demand(const DemandModel& model, RngStream& rng);

enum class LeadTimeMode { Deterministic, MeetOrDelay };

struct LeadTimeModel {
  long nominal = 0;
  LeadTimeMode mode = LeadTimeMode::Deterministic;
  double p_meet = 1.0;
  double delay_factor = 1.5;

  // Longest lead time this model can produce.
  long max_days() const;
  void validate() const;  // throws ConfigError
};

long sample_lead_time(const LeadTimeModel& model, RngStream& rng);

}  // namespace invopt
