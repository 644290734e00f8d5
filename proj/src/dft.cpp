#include "cdmd/dft.hpp"

#include <algorithm>
#include <cmath>

#include "cdmd/preprocess.hpp"

namespace cdmd {

std::pair<DmdModel, DftDistanceReport> fit_mean_subtracted(const TimeSeries& z, int d, SvdThreshold tol,
                                                            double decision_tol) {
  Prepared p = apply_pipeline(z, {PipelineStep::delay(d), PipelineStep::mean_subtract()});
  DmdModel model = fit_companion(p.data, p.pipeline, tol);
  DftDistanceReport rep;
  rep.theta = model.companion_order;
  rep.d = d;
  rep.c_ms = model.c_star;
  rep.distance = (model.c_star + ones(rep.theta)).norm() / std::sqrt(static_cast<double>(rep.theta));
  rep.decision_tol = decision_tol;
  rep.equivalent = rep.distance < decision_tol;
  return {std::move(model), std::move(rep)};
}

double relative_distance_to_dft(const TimeSeries& z, int d, Eigen::Index theta, SvdThreshold tol) {
  return fit_mean_subtracted(z.head(theta + d + 1), d, tol).second.distance;
}

double projection_distance(const TimeSeries& z_pipeline, SvdThreshold tol) {
  const CMatrix& data = z_pipeline.data();
  const double scale = std::max(1.0, data.colwise().norm().maxCoeff());
  if (data.rowwise().mean().norm() > 1e-8 * scale)
    throw InvalidArgument("equivalence_via_projection: input is not mean-subtracted");
  const CMatrix x = z_pipeline.x();
  const CVector p = nullspace_projection(x, ones(x.cols()), tol);
  return p.norm() / std::sqrt(static_cast<double>(x.cols()));
}

bool equivalence_via_projection(const TimeSeries& z_pipeline, SvdThreshold tol, double decision_tol) {
  return projection_distance(z_pipeline, tol) < decision_tol;
}

std::optional<int> detect_jump(const std::map<int, BoxStats>& stats, double factor) {
  double prev = -1.0;
  for (const auto& [theta, s] : stats) {
    if (prev >= 0.0 && s.median > factor * std::max(prev, 1e-12)) return theta;
    prev = std::max(prev, s.median);
  }
  return std::nullopt;
}

SufficiencyReport sufficiency_scan(const std::vector<TimeSeries>& ensemble, int r_max,
                                   std::vector<int> theta_range, SvdThreshold tol) {
  if (ensemble.empty()) throw InvalidArgument("sufficiency_scan: empty ensemble");
  if (r_max < 1) throw InvalidArgument("sufficiency_scan: r_max must be >= 1");
  if (theta_range.empty()) throw InvalidArgument("sufficiency_scan: empty theta range");
  std::sort(theta_range.begin(), theta_range.end());
  theta_range.erase(std::unique(theta_range.begin(), theta_range.end()), theta_range.end());
  if (theta_range.front() < 1) throw InvalidArgument("sufficiency_scan: theta must be >= 1");
  const int d = r_max - 1;
  const int need = theta_range.back() + d + 1;
  for (const auto& z : ensemble)
    if (z.snapshots() < need)
      throw InvalidArgument("sufficiency_scan: trajectory has " + std::to_string(z.snapshots()) +
                            " snapshots, need " + std::to_string(need));

  SufficiencyReport rep;
  rep.r_max_assumed = r_max;
  rep.delays = d;
  for (int theta : theta_range) {
    std::vector<double> vals;
    vals.reserve(ensemble.size());
    for (const auto& z : ensemble) vals.push_back(relative_distance_to_dft(z, d, theta, tol));
    rep.distances[theta] = box_stats(std::move(vals));
  }
  rep.jump_location = detect_jump(rep.distances);
  if (rep.jump_location) {
    rep.lower_bound_on_r = *rep.jump_location - 1;
  } else if (theta_range.back() >= r_max + 1) {
    rep.lower_bound_on_r = r_max + 1;
  }
  return rep;
}

SufficiencyReport sufficiency_scan(const TimeSeries& z, int r_max, std::vector<int> theta_range,
                                   SvdThreshold tol) {
  return sufficiency_scan(std::vector<TimeSeries>{z}, r_max, std::move(theta_range), tol);
}

}  // namespace cdmd
