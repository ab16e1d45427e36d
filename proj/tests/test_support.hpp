#pragma once

#include <string>

#include "invopt/catalog.hpp"

namespace invopt::test {

inline std::string data_path(const std::string& name) { return std::string(INVOPT_TEST_DATA) + "/" + name; }

inline Catalog table1() { return load_catalog(data_path("table1.csv")); }

inline ProductFields base_fields(std::string name = "PrX") {
  ProductFields f;
  f.name = std::move(name);
  f.purchase_cost = 10.0;
  f.lead_time = 5;
  f.unit_size = 1.0;
  f.selling_price = 20.0;
  f.starting_stock = 500;
  f.daily_order_size_mean = 100.0;
  f.daily_order_size_std = 30.0;
  f.order_cost = 500.0;
  f.holding_cost = 20.0;
  f.order_probability = 0.8;
  f.lead_time_demand = 400.0;
  f.annual_demand = 29200.0;
  return f;
}

}  // namespace invopt::test
