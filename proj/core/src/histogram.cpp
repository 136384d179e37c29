#include "ecofollow/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "ecofollow/csv.hpp"
#include "ecofollow/error.hpp"

namespace ecofollow {

double Histogram::bin_left(std::size_t i) const {
  return spec.lo + (spec.hi - spec.lo) * static_cast<double>(i) /
                       static_cast<double>(spec.count);
}

double Histogram::bin_right(std::size_t i) const {
  return i + 1 == spec.count ? spec.hi : bin_left(i + 1);
}

std::size_t Histogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

Histogram make_histogram(std::span<const double> values, const BinSpec& spec) {
  if (spec.count == 0) throw ArgumentError("histogram needs at least one bin");
  if (!(spec.hi > spec.lo)) throw ArgumentError("histogram range must satisfy hi > lo");
  Histogram h{spec, std::vector<std::size_t>(spec.count, 0)};
  const double width = (spec.hi - spec.lo) / static_cast<double>(spec.count);
  for (double v : values) {
    if (std::isnan(v)) continue;
    auto raw = std::floor((v - spec.lo) / width);
    raw = std::clamp(raw, 0.0, static_cast<double>(spec.count - 1));
    ++h.counts[static_cast<std::size_t>(raw)];
  }
  return h;
}

Histogram make_histogram(std::span<const double> values, std::size_t bins) {
  double lo = 0.0;
  double hi = 0.0;
  bool first = true;
  for (double v : values) {
    if (std::isnan(v)) continue;
    if (first) {
      lo = hi = v;
      first = false;
    }
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  return make_histogram(values, BinSpec{lo, hi, bins});
}

void write_histogram_csv(std::ostream& out, const Histogram& histogram) {
  out << "bin_left,bin_right,count\n";
  for (std::size_t i = 0; i < histogram.counts.size(); ++i) {
    out << csv::format_double(histogram.bin_left(i)) << ','
        << csv::format_double(histogram.bin_right(i)) << ',' << histogram.counts[i]
        << '\n';
  }
}

}  // namespace ecofollow
