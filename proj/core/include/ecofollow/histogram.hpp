#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace ecofollow {

// Equal-width bins over [lo, hi]. Values outside the range are clamped into
// the edge bins so that the total count always equals the number of values.
struct BinSpec {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t count = 50;
};

struct Histogram {
  BinSpec spec;
  std::vector<std::size_t> counts;

  double bin_left(std::size_t i) const;
  double bin_right(std::size_t i) const;
  std::size_t total() const;
};

Histogram make_histogram(std::span<const double> values, const BinSpec& spec);

// Range taken from the data; a degenerate range is widened by +-0.5.
Histogram make_histogram(std::span<const double> values, std::size_t bins);

// CSV with header `bin_left,bin_right,count`.
void write_histogram_csv(std::ostream& out, const Histogram& histogram);

}  // namespace ecofollow
