#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cdmd/dmd.hpp"
#include "cdmd/stats.hpp"

namespace cdmd {

inline constexpr double kEquivalenceTol = 1e-6;
inline constexpr double kJumpFactor = 100.0;

struct DftDistanceReport {
  Eigen::Index theta = 0;
  int d = 0;
  double distance = 0;  // ||c_ms + 1|| / sqrt(theta), in [0, 1]
  CVector c_ms;
  bool equivalent = false;
  double decision_tol = kEquivalenceTol;
};

// Companion DMD on delay_then_ms(Z, d) and its relative distance to the DFT.
std::pair<DmdModel, DftDistanceReport> fit_mean_subtracted(const TimeSeries& z, int d, SvdThreshold tol = {},
                                                            double decision_tol = kEquivalenceTol);

// Distance for the leading theta + d + 1 snapshots of z.
double relative_distance_to_dft(const TimeSeries& z, int d, Eigen::Index theta, SvdThreshold tol = {});

// ||P_N(X) 1|| / sqrt(theta) < decision_tol for an already centered series.
bool equivalence_via_projection(const TimeSeries& z_pipeline, SvdThreshold tol = {},
                                double decision_tol = kEquivalenceTol);
double projection_distance(const TimeSeries& z_pipeline, SvdThreshold tol = {});

struct SufficiencyReport {
  int r_max_assumed = 0;
  int delays = 0;
  std::map<int, BoxStats> distances;
  std::optional<int> jump_location;
  std::optional<int> lower_bound_on_r;
};

// Distances at d = r_max - 1 over theta_range, with the 100x median jump rule.
SufficiencyReport sufficiency_scan(const std::vector<TimeSeries>& ensemble, int r_max,
                                   std::vector<int> theta_range, SvdThreshold tol = {});
SufficiencyReport sufficiency_scan(const TimeSeries& z, int r_max, std::vector<int> theta_range,
                                   SvdThreshold tol = {});

// Smallest theta whose median exceeds factor * max(all earlier medians, 1e-12).
std::optional<int> detect_jump(const std::map<int, BoxStats>& medians, double factor = kJumpFactor);

}  // namespace cdmd
