#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ecofollow::csv {

// Minimal reader for numeric CSV files: comma separated, first line is the
// header, no quoted fields. Blank lines are skipped.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of `name` in the header, or -1.
  int column(std::string_view name) const;
};

Table read(std::istream& in);
Table read_file(const std::string& path);

std::vector<std::string> split_line(std::string_view line);

// Strict double parse; throws DataError naming `context` on failure.
double parse_double(std::string_view text, std::string_view context);

// Shortest representation that parses back to the identical double.
std::string format_double(double value);

}  // namespace ecofollow::csv
