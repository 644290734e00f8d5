#include "cdmd/preprocess.hpp"

namespace cdmd {

std::pair<TimeSeries, CVector> mean_subtract(const TimeSeries& z) {
  CVector mu = z.data().rowwise().mean();
  CMatrix centered = z.data().colwise() - mu;
  return {TimeSeries(std::move(centered), z.label()), mu};
}

TimeSeries delay_embed(const TimeSeries& z, int d) {
  if (d < 0) throw InvalidArgument("delay_embed: d must be >= 0");
  const Eigen::Index m = z.observables();
  const Eigen::Index width = z.snapshots() - d;
  if (width < 2)
    throw InvalidArgument("delay_embed: " + std::to_string(d) + " delays need at least " +
                          std::to_string(d + 2) + " snapshots, have " + std::to_string(z.snapshots()));
  CMatrix out(m * (d + 1), width);
  for (int k = 0; k <= d; ++k) out.middleRows(k * m, m) = z.data().middleCols(k, width);
  return TimeSeries(std::move(out), z.label());
}

TimeSeries ms_then_delay(const TimeSeries& z, int d) { return delay_embed(mean_subtract(z).first, d); }

TimeSeries delay_then_ms(const TimeSeries& z, int d) { return mean_subtract(delay_embed(z, d)).first; }

Prepared apply_pipeline(const TimeSeries& z, const std::vector<PipelineStep>& steps) {
  TimeSeries cur = z;
  for (const auto& s : steps)
    cur = s.kind == PipelineStep::Kind::MeanSubtract ? mean_subtract(cur).first : delay_embed(cur, s.delays);
  PipelineDescriptor p{steps, cur.snapshots() - 1, z.label()};
  return {cur, p};
}

SamplingRegime classify_regime(int theta, int r) {
  if (theta < 1 || r < 1) throw InvalidArgument("classify_regime: theta and r must be >= 1");
  RegimeTag tag = theta < r ? RegimeTag::UnderSampled
                            : (theta == r ? RegimeTag::JustSampled : RegimeTag::OverSampled);
  return {tag, theta, r};
}

const char* to_string(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::UnderSampled: return "under-sampled";
    case RegimeTag::JustSampled: return "just-sampled";
    case RegimeTag::OverSampled: return "over-sampled";
  }
  return "?";
}

}  // namespace cdmd
