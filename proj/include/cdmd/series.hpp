#pragma once

#include <string>
#include <vector>

#include "cdmd/linalg.hpp"

namespace cdmd {

// m observables (rows) by n+1 snapshots (columns), n >= 1.
class TimeSeries {
 public:
  TimeSeries(CMatrix data, std::string label = {});

  const CMatrix& data() const { return data_; }
  const std::string& label() const { return label_; }
  Eigen::Index observables() const { return data_.rows(); }
  Eigen::Index snapshots() const { return data_.cols(); }

  // First n columns.
  CMatrix x() const { return data_.leftCols(data_.cols() - 1); }
  // Last n columns.
  CMatrix y() const { return data_.rightCols(data_.cols() - 1); }
  CVector last() const { return data_.col(data_.cols() - 1); }
  // Leading `count` snapshots.
  TimeSeries head(Eigen::Index count) const;

 private:
  CMatrix data_;
  std::string label_;
};

struct PipelineStep {
  enum class Kind { MeanSubtract, Delay };
  Kind kind = Kind::MeanSubtract;
  int delays = 0;

  static PipelineStep mean_subtract() { return {Kind::MeanSubtract, 0}; }
  static PipelineStep delay(int d) { return {Kind::Delay, d}; }
  bool operator==(const PipelineStep&) const = default;
};

struct PipelineDescriptor {
  std::vector<PipelineStep> steps;
  Eigen::Index theta = 0;
  std::string source_label;

  std::string describe() const;
};

// Multiset of eigenvalues with values closer than match_tolerance merged.
class SpectrumSet {
 public:
  explicit SpectrumSet(const CVector& values, double match_tolerance = 1e-12);
  SpectrumSet(std::initializer_list<cplx> values, double match_tolerance = 1e-12);

  const CVector& values() const { return values_; }
  double match_tolerance() const { return tol_; }
  Eigen::Index size() const { return values_.size(); }
  bool empty() const { return values_.size() == 0; }
  bool contains(cplx z, double tol) const;

  SpectrumSet with(cplx z) const;
  SpectrumSet without(cplx z, double tol) const;

 private:
  CVector values_;
  double tol_;
};

}  // namespace cdmd
