#include "cdmd/stats.hpp"

#include <algorithm>
#include <cmath>

#include "cdmd/linalg.hpp"

namespace cdmd {

double quantile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw InvalidArgument("quantile of empty sample");
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

BoxStats box_stats(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("box_stats: empty sample");
  for (double v : values)
    if (!std::isfinite(v)) throw NumericalError("box_stats: non-finite indicator value");
  std::sort(values.begin(), values.end());
  BoxStats b;
  b.min = values.front();
  b.max = values.back();
  b.q1 = quantile_sorted(values, 0.25);
  b.median = quantile_sorted(values, 0.5);
  b.q3 = quantile_sorted(values, 0.75);
  b.count = values.size();
  return b;
}

}  // namespace cdmd
