#pragma once

#include <cstddef>
#include <vector>

namespace cdmd {

struct BoxStats {
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
  std::size_t count = 0;
};

// Linear interpolation between order statistics at position p (count - 1).
double quantile_sorted(const std::vector<double>& sorted, double p);
BoxStats box_stats(std::vector<double> values);

}  // namespace cdmd
