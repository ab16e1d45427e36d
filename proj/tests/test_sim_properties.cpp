#include <catch2/catch_amalgamated.hpp>

#include "sim_property_checks.hpp"

using namespace invopt;

TEST_CASE("randomized simulation invariants", "[sim][property]") {
  const auto s = test::run_property_suite(1500, 2024);
  INFO(s.first_failure);
  CHECK(s.cases == 1500);
  CHECK(s.oup_checked > 500);
  CHECK(s.failures == 0);
}

TEST_CASE("order quantity is not pathwise monotone under CRN", "[sim][property]") {
  const auto s = test::run_property_suite(1500, 2024);
  CHECK(s.q_checked > 500);
  CHECK(s.q_violations > 0);
  CHECK(s.q_violations < s.q_checked / 4);
}
