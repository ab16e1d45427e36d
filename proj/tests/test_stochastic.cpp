#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "invopt/errors.hpp"
#include "invopt/stochastic.hpp"
#include "test_support.hpp"

using namespace invopt;
using Catch::Approx;

namespace {

// Lognormal moments written out independently of the library.
std::pair<double, double> oracle_moments(double mu, double sigma) {
  const double s2 = sigma * sigma;
  const double mean = std::exp(mu + 0.5 * s2);
  const double var = (std::exp(s2) - 1.0) * std::exp(2.0 * mu + s2);
  return {mean, std::sqrt(var)};
}

}  // namespace

TEST_CASE("lognormal fit for PrA", "[stochastic]") {
  const auto p = fit_lognormal(103.50, 37.32);
  CHECK(p.log_mu == Approx(4.57845).margin(1e-5));
  CHECK(p.log_sigma == Approx(0.3497).margin(1e-4));
  const auto [m, s] = oracle_moments(p.log_mu, p.log_sigma);
  CHECK(m == Approx(103.50).epsilon(1e-12));
  CHECK(s == Approx(37.32).epsilon(1e-12));
}

TEST_CASE("lognormal fit round trips", "[stochastic]") {
  const auto p = fit_lognormal(648.55, 26.45);
  const auto [m, s] = oracle_moments(p.log_mu, p.log_sigma);
  CHECK(std::fabs(m - 648.55) < 1e-9);
  CHECK(std::fabs(s - 26.45) < 1e-9);
  RngStream rng(5, 0);
  for (int i = 0; i < 200; ++i) {
    const double mean = 0.01 + 1000.0 * rng.uniform();
    const double sd = 3.0 * mean * rng.uniform();
    const auto mom = lognormal_moments(fit_lognormal(mean, sd));
    CHECK(std::fabs(mom.mean - mean) <= 1e-9 * std::max(1.0, mean));
    CHECK(std::fabs(mom.std - sd) <= 1e-9 * std::max(1.0, mean));
  }
  CHECK(fit_lognormal(50.0, 0.0).log_sigma == 0.0);
  CHECK_THROWS_AS(fit_lognormal(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(fit_lognormal(-3.0, 1.0), DomainError);
}

TEST_CASE("daily demand degenerate cases", "[stochastic]") {
  RngStream rng(1, 0);
  const auto none = make_demand_model(0.0, 100.0, 10.0);
  const auto fixed = make_demand_model(1.0, 100.0, 0.0);
  for (int i = 0; i < 1000; ++i) {
    CHECK(sample_daily_demand(none, rng) == 0);
    CHECK(sample_daily_demand(fixed, rng) == 100);
  }
}

TEST_CASE("PrA daily demand mean, law of large numbers", "[stochastic]") {
  const auto model = make_demand_model(test::table1().at("PrA"));
  RngStream rng(42, 0);
  const int n = 1000000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = static_cast<double>(sample_daily_demand(model, rng));
    sum += d;
    sum2 += d * d;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sum2 / n - mean * mean) / n);
  const double target = 0.76 * 103.50;
  CHECK(std::fabs(mean - target) <= 0.01 * target);
  CHECK(std::fabs(mean - target) <= 4.0 * se + 0.05);
}

TEST_CASE("lead time sampling", "[stochastic]") {
  RngStream rng(3, 0);
  LeadTimeModel det{9, LeadTimeMode::Deterministic, 0.5, 1.5};
  for (int i = 0; i < 100; ++i) CHECK(sample_lead_time(det, rng) == 9);
  LeadTimeModel sure{12, LeadTimeMode::MeetOrDelay, 1.0, 1.5};
  for (int i = 0; i < 1000; ++i) CHECK(sample_lead_time(sure, rng) == 12);

  LeadTimeModel prd{12, LeadTimeMode::MeetOrDelay, 0.23, 1.5};
  const int n = 100000;
  int on_time = 0;
  for (int i = 0; i < n; ++i) {
    const long l = sample_lead_time(prd, rng);
    REQUIRE((l == 12 || l == 18));
    on_time += l == 12;
  }
  CHECK(std::fabs(static_cast<double>(on_time) / n - 0.23) <= 0.01);
  CHECK(prd.max_days() == 18);
  CHECK_THROWS_AS((LeadTimeModel{5, LeadTimeMode::MeetOrDelay, 1.5, 1.5}.validate()), ConfigError);
}

TEST_CASE("streams are reproducible and independent", "[stochastic]") {
  RngStream a(77, 3), b(77, 3);
  for (int i = 0; i < 10000; ++i) REQUIRE(a.next_u64() == b.next_u64());

  RngStream s0(77, 0), s1(77, 1);
  const int n = 100000;
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double x = s0.uniform(), y = s1.uniform();
    sx += x; sy += y; sxx += x * x; syy += y * y; sxy += x * y;
  }
  const double cov = sxy / n - (sx / n) * (sy / n);
  const double rho = cov / std::sqrt((sxx / n - sx * sx / n / n) * (syy / n - sy * sy / n / n));
  CHECK(std::fabs(rho) < 0.01);
  CHECK(derive_seed(77, 0) != derive_seed(77, 1));
  CHECK(derive_seed(77, 0) == derive_seed(77, 0));
}

TEST_CASE("samplers consume a fixed number of raw draws", "[stochastic]") {
  const std::vector<DemandModel> models{make_demand_model(0.0, 10, 1), make_demand_model(1.0, 10, 0),
                                        make_demand_model(0.5, 100, 30)};
  for (const auto& m : models) {
    RngStream a(9, 4), b(9, 4);
    for (int i = 0; i < 100; ++i) {
      sample_daily_demand(m, a);
      for (int k = 0; k < kDemandDraws; ++k) b.next_u64();
    }
    CHECK(a.next_u64() == b.next_u64());
  }
  for (const auto mode : {LeadTimeMode::Deterministic, LeadTimeMode::MeetOrDelay}) {
    RngStream a(9, 5), b(9, 5);
    const LeadTimeModel lt{7, mode, 0.4, 2.0};
    for (int i = 0; i < 100; ++i) {
      sample_lead_time(lt, a);
      for (int k = 0; k < kLeadTimeDraws; ++k) b.next_u64();
    }
    CHECK(a.next_u64() == b.next_u64());
  }
}

TEST_CASE("uniform and normal transforms", "[stochastic]") {
  RngStream rng(11, 0);
  const int n = 200000;
  double s = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const double z = rng.standard_normal();
    s += z;
    s2 += z * z;
  }
  CHECK(std::fabs(s / n) < 4.0 / std::sqrt(n));
  CHECK(s2 / n == Approx(1.0).margin(0.02));
}
