#pragma once

#include <cstdint>
#include <vector>

#include "cdmd/dmd.hpp"
#include "cdmd/systems.hpp"

namespace cdmd {

// Zero-mean uniform noise on [-s sqrt3, s sqrt3] per real component.
struct NoiseSpec {
  double std_dev = 0.0;
  std::uint64_t seed = 0;
};

// Complex series get independent real and imaginary parts with std sigma / sqrt2 each;
// series with identically zero imaginary part get real noise with std sigma.
TimeSeries add_noise(const TimeSeries& z, const NoiseSpec& spec);

// Best rank-k approximation, then fit_companion.
DmdModel tls_companion(const TimeSeries& z_noisy, Eigen::Index rank, SvdThreshold tol = {});
TimeSeries tls_data(const TimeSeries& z_noisy, Eigen::Index rank);

// (1 / (d+1)) (Z_filter)_d^H (Z_noisy)_d.  Z_filter must not overlap Z_noisy in time.
TimeSeries noise_resistant_data(const TimeSeries& z_noisy, const TimeSeries& z_filter, int d);
DmdModel noise_resistant_companion(const TimeSeries& z_noisy, const TimeSeries& z_filter, int d,
                                   SvdThreshold tol = {});

// Training window [0, train) and filter window [start, start + width) of one trajectory.
struct NoiseWindows {
  TimeSeries train;
  TimeSeries filter;
};
NoiseWindows split_windows(const TimeSeries& z, Eigen::Index train, Eigen::Index filter_start,
                           Eigen::Index filter_width);

enum class DenoiseVariant { Plain, Tls, NoiseResistant };

struct NoiseStudyConfig {
  LtiPreset preset = LtiPreset::LTI1a;
  int m = 1;
  std::uint64_t seed = 1;
  int ensemble = 20;
  double noise_std = 5.0;
  double signal_scale = 1.0;  // multiplies the initial state
  int delays = 200;
  int theta = 10;
  int rank = 7;
  int filter_columns = 14;  // delayed filter columns
  int gap = 1;
};

struct NoiseStudyResult {
  std::vector<double> plain, tls, noise_resistant;  // KMD-Quality vs sigma(Lambda) per member
};

NoiseStudyResult noise_study(const NoiseStudyConfig& cfg, int threads = 1);

// Quality of one variant on one noisy trajectory (length >= train + gap + filter span).
double noisy_quality(const LtiSystem& sys, const TimeSeries& z_noisy, int theta, int d, DenoiseVariant v,
                     int rank, int filter_columns, int gap, SvdThreshold tol = {});

}  // namespace cdmd
