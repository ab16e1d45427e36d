#include "invopt/catalog.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <set>

#include "invopt/csv.hpp"
#include "invopt/errors.hpp"

namespace invopt {

namespace {

void require(bool ok, const std::string& product, const char* field, const char* rule) {
  if (!ok) throw ValidationError(product + "/" + field + ": " + rule);
}

}  // namespace

ProductSpec::ProductSpec(ProductFields fields) : f_(std::move(fields)) {
  const std::string& n = f_.name.empty() ? std::string("<unnamed>") : f_.name;
  require(!f_.name.empty(), n, "name", "must be non-empty");
  for (const double v : {f_.purchase_cost, f_.unit_size, f_.selling_price, f_.daily_order_size_mean,
                         f_.daily_order_size_std, f_.order_cost, f_.holding_cost,
                         f_.order_probability, f_.lead_time_demand, f_.annual_demand}) {
    require(std::isfinite(v), n, "fields", "must be finite");
  }
  require(f_.purchase_cost > 0.0, n, "purchase_cost", "must be > 0");
  require(f_.selling_price > 0.0, n, "selling_price", "must be > 0");
  require(f_.order_cost > 0.0, n, "order_cost", "must be > 0");
  require(f_.holding_cost > 0.0, n, "holding_cost", "must be > 0");
  require(f_.lead_time >= 0, n, "lead_time", "must be >= 0");
  require(f_.starting_stock >= 0, n, "starting_stock", "must be >= 0");
  require(f_.unit_size >= 0.0, n, "size", "must be >= 0");
  require(f_.order_probability >= 0.0 && f_.order_probability <= 1.0, n, "order_probability",
          "must be in [0,1]");
  require(f_.daily_order_size_mean >= 0.0, n, "mean", "must be >= 0");
  require(f_.daily_order_size_std >= 0.0, n, "std_dev", "must be >= 0");
  require(f_.lead_time_demand >= 0.0, n, "demand_lead", "must be >= 0");
  require(f_.annual_demand >= 0.0, n, "annual_demand", "must be >= 0");
}

ReconciliationReport reconcile(const ProductSpec& spec) {
  ReconciliationReport r;
  r.implied_annual_demand = kDaysPerYear * spec.order_probability() * spec.daily_order_size_mean();
  r.declared_annual_demand = spec.annual_demand();
  if (r.declared_annual_demand > 0.0) {
    r.relative_error =
        std::fabs(r.implied_annual_demand - r.declared_annual_demand) / r.declared_annual_demand;
  } else {
    r.relative_error = r.implied_annual_demand > 0.0 ? 1.0 : 0.0;
  }
  return r;
}

Catalog::Catalog(std::vector<ProductSpec> products, std::string source_path)
    : products_(std::move(products)), source_(std::move(source_path)) {
  if (products_.empty()) throw ValidationError("empty catalog");
  std::set<std::string> seen;
  for (const auto& p : products_) {
    if (!seen.insert(p.name()).second) throw ValidationError(p.name() + "/name: duplicate product");
    const auto rec = reconcile(p);
    if (rec.relative_error > kReconciliationTolerance) {
      warnings_.push_back(p.name() + ": implied annual demand " + csv::format_fixed(rec.implied_annual_demand, 1) +
                          " differs from declared " + csv::format_fixed(rec.declared_annual_demand, 1) +
                          " by " + csv::format_fixed(100.0 * rec.relative_error, 1) + "%");
    }
  }
}

const ProductSpec& Catalog::at(std::string_view name) const {
  for (const auto& p : products_)
    if (p.name() == name) return p;
  throw ConfigError("unknown product '" + std::string(name) + "'");
}

bool Catalog::contains(std::string_view name) const noexcept {
  for (const auto& p : products_)
    if (p.name() == name) return true;
  return false;
}

Catalog parse_catalog(std::istream& in, const std::string& source) {
  const auto table = csv::read(in, source);
  if (table.header.empty()) throw ValidationError("empty catalog");
  const auto expected = csv::split(kCatalogHeader);
  if (table.header != expected) {
    throw ParseError(source, table.header_line,
                     "header must be exactly '" + std::string(kCatalogHeader) + "'");
  }
  std::vector<ProductSpec> products;
  products.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    const auto& c = row.cells;
    const auto num = [&](std::size_t i) { return csv::parse_double(c[i], source, row.line, expected[i]); };
    const auto integer = [&](std::size_t i) {
      return static_cast<long>(csv::parse_integer(c[i], source, row.line, expected[i]));
    };
    ProductFields f;
    f.name = c[0];
    f.purchase_cost = num(1);
    f.lead_time = integer(2);
    f.unit_size = num(3);
    f.selling_price = num(4);
    f.starting_stock = integer(5);
    f.daily_order_size_mean = num(6);
    f.daily_order_size_std = num(7);
    f.order_cost = num(8);
    f.holding_cost = num(9);
    f.order_probability = num(10);
    f.lead_time_demand = num(11);
    f.annual_demand = num(12);
    products.emplace_back(std::move(f));
  }
  return Catalog(std::move(products), source);
}

Catalog load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open catalog " + path);
  return parse_catalog(in, path);
}

void write_catalog(std::ostream& out, const Catalog& catalog) {
  out << kCatalogHeader << '\n';
  for (const auto& p : catalog.products()) {
    const auto& f = p.fields();
    out << f.name << ',' << csv::format_exact(f.purchase_cost) << ',' << f.lead_time << ','
        << csv::format_exact(f.unit_size) << ',' << csv::format_exact(f.selling_price) << ','
        << f.starting_stock << ',' << csv::format_exact(f.daily_order_size_mean) << ','
        << csv::format_exact(f.daily_order_size_std) << ',' << csv::format_exact(f.order_cost) << ','
        << csv::format_exact(f.holding_cost) << ',' << csv::format_exact(f.order_probability) << ','
        << csv::format_exact(f.lead_time_demand) << ',' << csv::format_exact(f.annual_demand) << '\n';
  }
}

}  // namespace invopt
