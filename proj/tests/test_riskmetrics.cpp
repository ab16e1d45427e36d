#include <catch2/catch_amalgamated.hpp>

#include "invopt/errors.hpp"
#include "invopt/riskmetrics.hpp"
#include "test_support.hpp"

using namespace invopt;
using Catch::Approx;

TEST_CASE("holding cost risk", "[risk]") {
  CHECK(holding_cost_risk(12, 0) == 0);
  CHECK(holding_cost_risk(12, 0.5) == 6.0);
  CHECK(holding_cost_risk(7, 1.0) == 7.0);
  CHECK_THROWS_AS(holding_cost_risk(-1, 1), DomainError);
}

TEST_CASE("service level", "[risk]") {
  CHECK(service_level(500, 0, 500, 0) == 1.0);
  CHECK(service_level(705, 112, 2750, 0) == Approx(817.0 / 2750.0));
  CHECK(service_level(705, 112, 2750, 0) == Approx(0.297).margin(5e-4));
  CHECK(service_level(0, 0, 10, 0) == 0.0);
  CHECK(service_level(900, 200, 100, 0) == 1.0);
  CHECK_THROWS_AS(service_level(1, 1, 0, 0), DomainError);
}

TEST_CASE("inventory holding cost", "[risk]") {
  CHECK(inventory_holding_cost(0, 0, 20) == 0);
  CHECK(inventory_holding_cost(1693, 185, 20) == Approx(20630.0));
  CHECK(inventory_holding_cost(100, 10, 4) == Approx(2 * inventory_holding_cost(100, 10, 2)));
}

TEST_CASE("backorders", "[risk]") {
  CHECK(expected_backorder_cost(1.0, 705, 3.0) == 0.0);
  CHECK(expected_backorders(0.95, 705) == Approx(35.25));
  CHECK(expected_backorder_cost(0.95, 705, 1.0) == Approx(35.25));
  CHECK(expected_backorder_cost(0.5, 100, 2.0) == Approx(100.0));
  double prev = 1e300;
  for (double sl = 0; sl <= 1.0; sl += 0.1) {
    const double c = expected_backorder_cost(sl, 500, 2);
    CHECK(c <= prev);
    prev = c;
  }
  CHECK_THROWS_AS(expected_backorders(1.2, 1), DomainError);
}

TEST_CASE("expected fill rate", "[risk]") {
  CHECK(expected_fill_rate(1.0, 30, 100) == 1.0);
  CHECK(expected_fill_rate(0.9, 0, 100) == Approx(0.9));
  CHECK(expected_fill_rate(0.5, 50, 200) == Approx(0.625));
  CHECK(expected_fill_rate(0.5, 5000, 200) == 1.0);
  double prev = 0;
  for (double inv = 0; inv <= 400; inv += 20) {
    const double e = expected_fill_rate(0.3, inv, 200);
    CHECK(e >= prev);
    CHECK(e <= 1.0);
    prev = e;
  }
  CHECK_THROWS_AS(expected_fill_rate(0.5, 1, 0), DomainError);
}

TEST_CASE("supplier performance rank", "[risk]") {
  const auto r = supplier_performance_rank(test::table1());
  REQUIRE(r.size() == 4);
  CHECK(r.front() == "PrD");
  CHECK(r.back() == "PrB");

  const Catalog one({ProductSpec(test::base_fields("Solo"))}, "one");
  CHECK(supplier_performance_rank(one) == std::vector<std::string>{"Solo"});

  const Catalog tie({ProductSpec(test::base_fields("Zed")), ProductSpec(test::base_fields("Abe"))}, "tie");
  CHECK(supplier_performance_rank(tie) == std::vector<std::string>{"Abe", "Zed"});
}

TEST_CASE("risk report", "[risk]") {
  const auto rows = make_risk_report(test::table1(), {1.0, 1.0, 1.0});
  REQUIRE(rows.size() == 4);
  CHECK(rows[1].hcr == 7.0);
  CHECK(rows[0].safety_stock == 112);
  CHECK(rows[0].service_level == Approx(0.297).margin(5e-4));
  CHECK(rows[3].spr_rank == 1);
  for (const auto& r : rows) {
    CHECK(r.service_level >= 0);
    CHECK(r.service_level <= 1);
    CHECK(r.efr >= 0);
    CHECK(r.efr <= 1);
    CHECK(r.ihc >= 0);
    CHECK(r.boc >= 0);
  }
}
