#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <numeric>
#include <sstream>

#include "invopt/errors.hpp"
#include "invopt/report.hpp"
#include "invopt/stochastic.hpp"
#include "test_support.hpp"

using namespace invopt;

TEST_CASE("histogram examples", "[report]") {
  const std::vector<double> one{3.5};
  const auto h1 = emit_histogram(one, 1);
  REQUIRE(h1.size() == 1);
  CHECK(h1[0].count == 1);
  CHECK(emit_histogram(one, 4)[0].count == 1);

  std::vector<double> u(100);
  std::iota(u.begin(), u.end(), 0.0);
  const auto h = emit_histogram(u, 10);
  REQUIRE(h.size() == 10);
  for (const auto& b : h) CHECK(b.count == 10);
  CHECK(h.front().lo == 0.0);
  CHECK(h.back().hi == 99.0);
  for (std::size_t i = 1; i < h.size(); ++i) CHECK(h[i].lo == h[i - 1].hi);

  RngStream r(1, 2);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> xs(1 + static_cast<std::size_t>(r.uniform() * 500));
    for (auto& x : xs) x = r.standard_normal() * 1000;
    const int bins = 1 + static_cast<int>(r.uniform() * 40);
    const auto hb = emit_histogram(xs, bins);
    long total = 0;
    for (const auto& b : hb) total += b.count;
    CHECK(total == static_cast<long>(xs.size()));
    CHECK(hb.size() == static_cast<std::size_t>(bins));
  }
  CHECK_THROWS_AS(emit_histogram(std::vector<double>{}, 3), DomainError);
  CHECK_THROWS_AS(emit_histogram(one, 0), DomainError);
}

TEST_CASE("manifest lines", "[report]") {
  const auto m = make_manifest("simulate", "data/table1.csv", 7, {{"policy", "rq"}});
  CHECK(m.rng_algorithm == std::string(RngStream::kAlgorithm));
  CHECK(m.tool_version == tool_version());
  std::ostringstream o;
  write_manifest(o, m);
  const auto s = o.str();
  CHECK(s.find("# subcommand=simulate\n") != std::string::npos);
  CHECK(s.find("# seed=7\n") != std::string::npos);
  CHECK(s.find("# policy=rq\n") != std::string::npos);
  CHECK(s.find("# rng=mt19937_64/seed_seq\n") != std::string::npos);
}

TEST_CASE("manifest timestamp comes from SOURCE_DATE_EPOCH", "[report]") {
  ::setenv("SOURCE_DATE_EPOCH", "0", 1);
  CHECK(manifest_timestamp() == "1970-01-01T00:00:00Z");
  ::unsetenv("SOURCE_DATE_EPOCH");
  CHECK(manifest_timestamp() == "unset");
}

TEST_CASE("policy table round trip", "[report]") {
  const PolicyTable t{{"PrA", PeriodicReview{30, 2071}}, {"PrB", ContinuousReview{2790, 22270}}};
  std::ostringstream o;
  write_policy_table(o, t);
  std::istringstream in(o.str());
  CHECK(parse_policy_table(in, "mem") == t);

  const auto pq = load_policy_table(test::data_path("params_pq.csv"));
  CHECK(std::get<PeriodicReview>(pq.at("PrB")).order_up_to == 18424);
  const auto rq = load_policy_table(test::data_path("params_rq.csv"));
  CHECK(std::get<ContinuousReview>(rq.at("PrC")) == ContinuousReview{2580, 2570});

  std::istringstream bad("name,policy,review_period,order_up_to,reorder_point,order_quantity\nPrA,xq,30,1,,\n");
  CHECK_THROWS_AS(parse_policy_table(bad, "bad"), ValidationError);
  std::istringstream zero("name,policy,review_period,order_up_to,reorder_point,order_quantity\nPrA,pq,30,0,,\n");
  CHECK_THROWS(parse_policy_table(zero, "zero"));
  CHECK_THROWS_AS(load_policy_table("/nonexistent/params.csv"), IoError);
}

TEST_CASE("bounds files", "[report]") {
  const auto b = load_bounds(test::data_path("bounds_oup4.csv"));
  REQUIRE(b.size() == 4);
  CHECK(b[3].lo == 0.0);
  CHECK(b[3].hi == 5000.0);
  std::istringstream skip("dimension,lo,hi\n0,0,1\n2,0,1\n");
  CHECK_THROWS_AS(parse_bounds(skip, "skip"), ParseError);
  std::istringstream inverted("dimension,lo,hi\n0,5,1\n");
  CHECK_THROWS(parse_bounds(inverted, "inv"));
  std::istringstream header("dim,lo,hi\n0,0,1\n");
  CHECK_THROWS_AS(parse_bounds(header, "hdr"), ParseError);
}

TEST_CASE("comparison and history writers", "[report]") {
  PolicyComparison c;
  ProductComparison p;
  p.product = "PrA";
  p.periodic = PeriodicReview{30, 2000};
  p.continuous = ContinuousReview{700, 1300};
  p.periodic_stats.mean_profit = 100;
  p.continuous_stats.mean_profit = 130;
  c.products.push_back(p);
  c.total_periodic = 100;
  c.total_continuous = 130;
  c.relative_difference = 0.3;
  std::ostringstream o;
  write_comparison_csv(o, c);
  CHECK(o.str().find("PrA,2000,700,1300,") != std::string::npos);
  CHECK(o.str().find("TOTAL,") != std::string::npos);

  std::ostringstream h;
  BoStep s;
  s.x = {1.5, 2};
  s.y = 3;
  s.incumbent = 3;
  write_bo_history_csv(h, {"a", "b"}, {s});
  CHECK(h.str().rfind("iteration,phase,a,b,y,incumbent,acquisition\n", 0) == 0);
}
