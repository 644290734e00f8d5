#pragma once

#include <utility>

#include "cdmd/series.hpp"

namespace cdmd {

// (Z - mu 1^T, mu) with mu the temporal mean.
std::pair<TimeSeries, CVector> mean_subtract(const TimeSeries& z);

// m(d+1) x (n+1-d); block k holds snapshots k .. n-d+k (earliest block on top).
TimeSeries delay_embed(const TimeSeries& z, int d);

TimeSeries ms_then_delay(const TimeSeries& z, int d);
TimeSeries delay_then_ms(const TimeSeries& z, int d);

struct Prepared {
  TimeSeries data;
  PipelineDescriptor pipeline;
};
Prepared apply_pipeline(const TimeSeries& z, const std::vector<PipelineStep>& steps);

enum class RegimeTag { UnderSampled, JustSampled, OverSampled };

struct SamplingRegime {
  RegimeTag tag;
  int theta;
  int r;
};

SamplingRegime classify_regime(int theta, int r);
const char* to_string(RegimeTag tag);

}  // namespace cdmd
