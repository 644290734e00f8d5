#include "cdmd/series.hpp"

#include <cmath>
#include <sstream>

namespace cdmd {

TimeSeries::TimeSeries(CMatrix data, std::string label)
    : data_(std::move(data)), label_(std::move(label)) {
  if (data_.rows() < 1) throw InvalidArgument("time series needs at least one observable");
  if (data_.cols() < 2) throw InvalidArgument("time series needs at least 2 snapshots");
  require_finite(data_, "time series");
}

TimeSeries TimeSeries::head(Eigen::Index count) const {
  if (count < 2 || count > snapshots())
    throw InvalidArgument("head: requested " + std::to_string(count) + " of " +
                          std::to_string(snapshots()) + " snapshots");
  return TimeSeries(data_.leftCols(count), label_);
}

std::string PipelineDescriptor::describe() const {
  std::ostringstream os;
  os << (source_label.empty() ? "series" : source_label);
  for (const auto& s : steps) {
    if (s.kind == PipelineStep::Kind::MeanSubtract)
      os << " | ms";
    else
      os << " | delay(" << s.delays << ")";
  }
  os << " -> theta=" << theta;
  return os.str();
}

namespace {
CVector merge_close(const CVector& in, double tol) {
  std::vector<cplx> kept;
  for (Eigen::Index i = 0; i < in.size(); ++i) {
    bool dup = false;
    for (const auto& k : kept)
      if (std::abs(k - in(i)) <= tol) dup = true;
    if (!dup) kept.push_back(in(i));
  }
  CVector out(static_cast<Eigen::Index>(kept.size()));
  for (std::size_t i = 0; i < kept.size(); ++i) out(static_cast<Eigen::Index>(i)) = kept[i];
  return out;
}
}  // namespace

SpectrumSet::SpectrumSet(const CVector& values, double match_tolerance)
    : values_(merge_close(values, match_tolerance)), tol_(match_tolerance) {
  if (!(match_tolerance >= 0.0)) throw InvalidArgument("match tolerance must be nonnegative");
  require_finite(values_, "spectrum");
}

SpectrumSet::SpectrumSet(std::initializer_list<cplx> values, double match_tolerance)
    : SpectrumSet(Eigen::Map<const CVector>(values.begin(), static_cast<Eigen::Index>(values.size())),
                  match_tolerance) {}

bool SpectrumSet::contains(cplx z, double tol) const {
  for (Eigen::Index i = 0; i < values_.size(); ++i)
    if (std::abs(values_(i) - z) <= tol) return true;
  return false;
}

SpectrumSet SpectrumSet::with(cplx z) const {
  CVector v(values_.size() + 1);
  v << values_, z;
  return SpectrumSet(v, tol_);
}

SpectrumSet SpectrumSet::without(cplx z, double tol) const {
  std::vector<cplx> kept;
  for (Eigen::Index i = 0; i < values_.size(); ++i)
    if (std::abs(values_(i) - z) > tol) kept.push_back(values_(i));
  return SpectrumSet(Eigen::Map<const CVector>(kept.data(), static_cast<Eigen::Index>(kept.size())), tol_);
}

}  // namespace cdmd
