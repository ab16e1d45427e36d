#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "invopt/eoq.hpp"
#include "invopt/errors.hpp"
#include "test_support.hpp"

using namespace invopt;
using Catch::Approx;

TEST_CASE("worked EOQ values", "[eoq]") {
  CHECK(std::fabs(eoq(28670, 1000, 20) - 1693) <= 1.0);
  CHECK(std::fabs(eoq(237370, 1200, 20) - 5337) <= 1.0);
  CHECK(std::fabs(eoq(51831, 1000, 20) - 2277) <= 1.0);
  CHECK(std::fabs(eoq(13056, 1200, 20) - 1252) <= 1.0);
  CHECK(eoq(4 * 1234.5, 300, 7) == Approx(2 * eoq(1234.5, 300, 7)).epsilon(1e-14));
  CHECK_THROWS_AS(eoq(0, 1, 1), DomainError);
  CHECK_THROWS_AS(eoq(1, -1, 1), DomainError);
  CHECK_THROWS_AS(eoq(1, 1, 0), DomainError);
}

TEST_CASE("worked total annual cost", "[eoq]") {
  CHECK(total_annual_cost(28670, 1693, 1000, 20) == Approx(33864).epsilon(0.003));
  CHECK(total_annual_cost(13056, 1252, 1200, 20) == Approx(25033).epsilon(0.003));
  CHECK(total_annual_cost(237370, 5337, 1200, 20) == Approx(106786).epsilon(0.003));
  CHECK(total_annual_cost(51831, 2277, 1000, 20) == Approx(45532).epsilon(0.003));
  const double q = eoq(28670, 1000, 20);
  CHECK(ordering_cost_component(28670, q, 1000) == Approx(holding_cost_component(q, 20)).epsilon(0.005));
  CHECK_THROWS_AS(total_annual_cost(1, 0, 1, 1), DomainError);
}

TEST_CASE("EOQ minimizes total annual cost", "[eoq]") {
  for (const auto& [d, s, h] : {std::tuple{28670.0, 1000.0, 20.0}, {237370.0, 1200.0, 20.0}, {50.0, 3.0, 0.5}}) {
    const double q = eoq(d, s, h);
    const double best = total_annual_cost(d, q, s, h);
    for (double k : {0.5, 0.9, 1.1, 2.0}) CHECK(total_annual_cost(d, k * q, s, h) >= best);
  }
}

TEST_CASE("total annual profit", "[eoq]") {
  // 28670 * 16.10 - cost at the rounded EOQ.
  const double expected = 28670 * 16.10 - ((28670.0 / 1693.0) * 1000.0 + (1693.0 / 2.0) * 20.0);
  CHECK(total_annual_profit(28670, 16.10, 1693, 1000, 20) == Approx(expected).epsilon(1e-12));
  CHECK(total_annual_profit(28670, 16.10, 1693, 1000, 20) == Approx(427723).margin(1.0));
  CHECK(total_annual_profit(100, 0, 10, 5, 2) == Approx(-total_annual_cost(100, 10, 5, 2)));
  CHECK(total_annual_profit(100, 6, 10, 5, 2) - total_annual_profit(100, 3, 10, 5, 2) == Approx(300.0));
}

TEST_CASE("safety stock and reorder point", "[eoq]") {
  CHECK(safety_stock(1.65, 37.32, 9, 0) == 185);
  CHECK(safety_stock(0, 37.32, 9, 0) == 0);
  CHECK(safety_stock(1.65, 26.45, 6, 30) == 262);
  CHECK(reorder_point(705, 185) == 890);
  CHECK(reorder_point(42, 0) == 42);
  CHECK(reorder_point(3891, 262) == 4153);
  double prev = 0;
  for (double z = 0; z <= 3; z += 0.05) {
    const double ss = safety_stock(z, 10, 4, 2);
    CHECK(ss >= prev);
    prev = ss;
  }
  prev = 0;
  for (double lt = 0; lt <= 30; lt += 1) {
    const double ss = safety_stock(1.65, 10, lt, 0);
    CHECK(ss >= prev);
    prev = ss;
  }
}

TEST_CASE("expected lost order proportion", "[eoq]") {
  CHECK(expected_lost_order_proportion(0.3, 100, 100) == 0.0);
  CHECK(expected_lost_order_proportion(0.0, 10, 100) == 0.0);
  CHECK(expected_lost_order_proportion(0.05, 185, 1031) == Approx(0.05 * (1 - 185.0 / 1031.0)));
  CHECK(expected_lost_order_proportion(0.05, 185, 1031) == Approx(0.0410).margin(1e-4));
  CHECK(expected_lost_order_proportion(0.5, 300, 100) == 0.0);
  CHECK_THROWS_AS(expected_lost_order_proportion(0.05, 1, 0), DomainError);
}

TEST_CASE("continuous Q star as printed", "[eoq]") {
  CHECK(continuous_q_star(103.50, 1000, 20) == Approx(std::sqrt(10350.0)).epsilon(1e-14));
  CHECK(continuous_q_star(103.50, 1000, 20) == Approx(101.7).margin(0.05));
  CHECK(continuous_q_star(648.55, 1200, 20) == Approx(279.0).margin(0.05));
  CHECK(continuous_q_star(4 * 7.0, 3, 2) == Approx(2 * continuous_q_star(7.0, 3, 2)));
  CHECK_THROWS_AS(continuous_q_star(0, 1, 1), DomainError);
}

TEST_CASE("z scores", "[eoq]") {
  CHECK(z_for_service_level(0.90) == 1.2816);
  CHECK(z_for_service_level(0.95) == 1.6449);
  CHECK(z_for_service_level(0.99) == 2.3263);
  CHECK(z_for_service_level(0.95, true) == 1.65);
  CHECK(z_for_service_level(0.975) == Approx(1.959964).margin(1e-5));
}

TEST_CASE("EOQ report invariants", "[eoq]") {
  for (const auto& p : test::table1().products()) {
    const auto r = make_eoq_report(p);
    CHECK(r.eoq > 0);
    CHECK(r.safety_stock >= 0);
    CHECK(r.reorder_point >= r.safety_stock);
    CHECK(r.expected_lost_order_proportion >= 0);
    CHECK(r.expected_lost_order_proportion <= 1);
  }
  const auto a = make_eoq_report(test::table1().at("PrA"), {0.95, true, 0.0});
  CHECK(a.safety_stock == 185);
  CHECK(a.reorder_point == 890);
}
