#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace invopt::csv {

// One data row with its 1-based line number in the source.
struct Row {
  std::size_t line = 0;
  std::vector<std::string> cells;
};

// Reads a comma-separated table. Blank lines and lines starting with '#'
// are skipped; the first remaining line is the header. No quoting support:
// every file this project reads or writes is plain numeric/identifier data.
struct Table {
  std::string source;
  std::size_t header_line = 0;
  std::vector<std::string> header;
  std::vector<Row> rows;

  // Column index by name, or nullopt.
  std::optional<std::size_t> column(std::string_view name) const;
};

Table read(std::istream& in, const std::string& source);
Table read_file(const std::string& path);

std::vector<std::string> split(std::string_view line, char sep = ',');

double parse_double(std::string_view text, const std::string& source, std::size_t line,
                    std::string_view field);
long long parse_integer(std::string_view text, const std::string& source, std::size_t line,
                        std::string_view field);

// Shortest representation that round-trips exactly.
std::string format_exact(double value);
// Fixed-point with the given number of decimals.
std::string format_fixed(double value, int decimals);

}  // namespace invopt::csv
