#include "invopt/stochastic.hpp"

#include <cmath>
#include <numbers>

#include "invopt/catalog.hpp"
#include "invopt/errors.hpp"

namespace invopt {

namespace {

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(seeded_engine(seed, stream_id)) {}

double RngStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::standard_normal() {
  const double u1 = uniform_open_low();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
  // Stream ids >= 2^63 are never used for replications, so this cannot collide with them.
  RngStream s(seed, (std::uint64_t{1} << 63) | salt);
  return s.next_u64();
}

LognormalParams fit_lognormal(double mean, double std) {
  if (!(mean > 0.0) || !std::isfinite(mean)) throw DomainError("fit_lognormal: mean must be > 0");
  if (!(std >= 0.0) || !std::isfinite(std)) throw DomainError("fit_lognormal: std must be >= 0");
  const double cv2 = (std / mean) * (std / mean);
  const double s2 = std::log1p(cv2);
  return {std::log(mean) - 0.5 * s2, std::sqrt(s2)};
}

Moments lognormal_moments(const LognormalParams& p) {
  const double s2 = p.log_sigma * p.log_sigma;
  const double mean = std::exp(p.log_mu + 0.5 * s2);
  return {mean, mean * std::sqrt(std::expm1(s2))};
}

DemandModel make_demand_model(double order_probability, double size_mean, double size_std) {
  if (!(order_probability >= 0.0 && order_probability <= 1.0))
    throw DomainError("demand model: order probability must be in [0,1]");
  if (size_mean <= 0.0) return DemandModel{0.0, 0.0, 0.0};
  const auto ln = fit_lognormal(size_mean, size_std);
  return DemandModel{order_probability, ln.log_mu, ln.log_sigma};
}

DemandModel make_demand_model(const ProductSpec& spec) {
  return make_demand_model(spec.order_probability(), spec.daily_order_size_mean(),
                           spec.daily_order_size_std());
}

long sample_daily_demand(const DemandModel& model, RngStream& rng) {
  const double u = rng.uniform();
  const double z = rng.standard_normal();
  if (!(u < model.order_probability)) return 0;
  return std::lround(std::exp(model.log_mu + model.log_sigma * z));
}

long LeadTimeModel::max_days() const {
  if (mode == LeadTimeMode::Deterministic) return nominal;
  return std::max(nominal, std::lround(static_cast<double>(nominal) * delay_factor));
}

void LeadTimeModel::validate() const {
  if (nominal < 0) throw ConfigError("lead time must be >= 0");
  if (mode == LeadTimeMode::MeetOrDelay) {
    if (!(p_meet >= 0.0 && p_meet <= 1.0)) throw ConfigError("lead time p_meet must be in [0,1]");
    if (!(delay_factor > 1.0)) throw ConfigError("lead time delay factor must be > 1");
  }
}

long sample_lead_time(const LeadTimeModel& model, RngStream& rng) {
  const double u = rng.uniform();
  if (model.mode == LeadTimeMode::Deterministic || u < model.p_meet) return model.nominal;
  return std::lround(static_cast<double>(model.nominal) * model.delay_factor);
}

}  // namespace invopt
