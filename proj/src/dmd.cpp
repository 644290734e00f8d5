#include "cdmd/dmd.hpp"

#include <cmath>
#include <limits>

namespace cdmd {

CompanionEigen companion_eigen(const CVector& c) {
  CMatrix t = companion_from(c);
  Eigen::ComplexEigenSolver<CMatrix> es(t, true);
  if (es.info() != Eigen::Success) throw NumericalError("companion eigensolver did not converge");
  const CVector raw = es.eigenvalues();
  const CMatrix vec = es.eigenvectors();
  auto order = spectral_order(raw);
  CompanionEigen out;
  out.values.resize(raw.size());
  out.vectors.resize(vec.rows(), vec.cols());
  for (std::size_t j = 0; j < order.size(); ++j) {
    const auto k = static_cast<Eigen::Index>(j);
    out.values(k) = raw(order[j]);
    out.vectors.col(k) = vec.col(order[j]).normalized();
  }
  return out;
}

double min_pairwise_gap(const CVector& values) {
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < values.size(); ++i)
    for (Eigen::Index j = i + 1; j < values.size(); ++j)
      gap = std::min(gap, std::abs(values(i) - values(j)));
  return gap;
}

DmdModel fit_companion(const TimeSeries& z, SvdThreshold tol) {
  PipelineDescriptor p;
  p.theta = z.snapshots() - 1;
  p.source_label = z.label();
  return fit_companion(z, p, tol);
}

DmdModel fit_companion(const TimeSeries& z, const PipelineDescriptor& pipeline, SvdThreshold tol) {
  const CMatrix x = z.x();
  const CVector last = z.last();
  DmdModel m;
  m.companion_order = x.cols();
  m.pipeline = pipeline;
  m.pipeline.theta = x.cols();
  m.c_star = min_norm_lstsq(x, last, tol);
  m.residual = last - x * m.c_star;
  CompanionEigen eig = companion_eigen(m.c_star);
  m.eigenvalues = eig.values;
  m.unit_eigenvectors = eig.vectors;
  m.degenerate = min_pairwise_gap(m.eigenvalues) <= kDistinctEigenvalueGap;
  if (m.degenerate) {
    m.modes = x * eig.vectors;
  } else {
    CMatrix vand = vandermonde(m.eigenvalues, m.companion_order);
    Eigen::PartialPivLU<CMatrix> lu(vand);
    m.modes = x * lu.inverse();
  }
  if (!all_finite(m.modes)) throw NumericalError("fit_companion: non-finite modes");
  return m;
}

CMatrix reconstruct(const DmdModel& model, const CMatrix& x) {
  if (model.degenerate)
    throw NumericalError("reconstruct: degenerate eigenvalues, Vandermonde expansion undefined");
  const Eigen::Index n = model.companion_order;
  if (x.cols() != n || x.rows() != model.modes.rows())
    throw InvalidArgument("reconstruct: X shape does not match the model");
  CMatrix vand = vandermonde(model.eigenvalues, n);
  CMatrix y = model.modes * model.eigenvalues.asDiagonal() * vand;
  y.col(n - 1) += model.residual;
  return y;
}

CVector forecast(const DmdModel& model, const CMatrix& x_test) {
  if (x_test.cols() != model.companion_order)
    throw InvalidArgument("forecast: X_test must have companion_order columns");
  return x_test * model.c_star;
}

RVector unit_mode_norms(const DmdModel& model, const CMatrix& x) {
  if (x.cols() != model.companion_order) throw InvalidArgument("unit_mode_norms: shape mismatch");
  return (x * model.unit_eigenvectors).colwise().norm().transpose();
}

}  // namespace cdmd
