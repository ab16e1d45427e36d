#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace invopt {

// Raw per-product record as it appears in the catalog file.
// Holding cost is money per unit per YEAR; the simulator accrues it daily at 1/365.
struct ProductFields {
  std::string name;
  double purchase_cost = 0.0;
  long lead_time = 0;  // days
  double unit_size = 0.0;
  double selling_price = 0.0;
  long starting_stock = 0;
  double daily_order_size_mean = 0.0;  // order size on days an order occurs
  double daily_order_size_std = 0.0;
  double order_cost = 0.0;
  double holding_cost = 0.0;
  double order_probability = 0.0;  // chance of an order on a given day
  double lead_time_demand = 0.0;
  double annual_demand = 0.0;

  bool operator==(const ProductFields&) const = default;
};

// A validated product. The only way to obtain one is through the checking
// constructor, so every instance satisfies the catalog invariants.
class ProductSpec {
 public:
  explicit ProductSpec(ProductFields fields);

  const ProductFields& fields() const noexcept { return f_; }
  const std::string& name() const noexcept { return f_.name; }
  double purchase_cost() const noexcept { return f_.purchase_cost; }
  long lead_time() const noexcept { return f_.lead_time; }
  double unit_size() const noexcept { return f_.unit_size; }
  double selling_price() const noexcept { return f_.selling_price; }
  long starting_stock() const noexcept { return f_.starting_stock; }
  double daily_order_size_mean() const noexcept { return f_.daily_order_size_mean; }
  double daily_order_size_std() const noexcept { return f_.daily_order_size_std; }
  double order_cost() const noexcept { return f_.order_cost; }
  double holding_cost() const noexcept { return f_.holding_cost; }
  double order_probability() const noexcept { return f_.order_probability; }
  double lead_time_demand() const noexcept { return f_.lead_time_demand; }
  double annual_demand() const noexcept { return f_.annual_demand; }

  bool operator==(const ProductSpec&) const = default;

 private:
  ProductFields f_;
};

// Implied annual demand from order frequency and order size, against the declared figure.
struct ReconciliationReport {
  double implied_annual_demand = 0.0;
  double declared_annual_demand = 0.0;
  double relative_error = 0.0;
};

inline constexpr double kDaysPerYear = 365.0;
inline constexpr double kReconciliationTolerance = 0.05;

ReconciliationReport reconcile(const ProductSpec& spec);

class Catalog {
 public:
  Catalog(std::vector<ProductSpec> products, std::string source_path);

  const std::vector<ProductSpec>& products() const noexcept { return products_; }
  const std::string& source_path() const noexcept { return source_; }
  // Products whose declared annual demand misses the implied one by more than 5%.
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  std::size_t size() const noexcept { return products_.size(); }
  const ProductSpec& at(std::string_view name) const;  // throws ConfigError
  bool contains(std::string_view name) const noexcept;

 private:
  std::vector<ProductSpec> products_;
  std::string source_;
  std::vector<std::string> warnings_;
};

inline constexpr std::string_view kCatalogHeader =
    "name,purchase_cost,lead_time,size,selling_price,starting_stock,mean,std_dev,order_cost,"
    "holding_cost,probability,demand_lead,annual_demand";

Catalog load_catalog(const std::string& path);
Catalog parse_catalog(std::istream& in, const std::string& source);
void write_catalog(std::ostream& out, const Catalog& catalog);

}  // namespace invopt
