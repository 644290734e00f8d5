#pragma once

#include "cdmd/series.hpp"

namespace cdmd {

struct DmdModel {
  CVector c_star;       // length n
  CVector residual;     // z_{n+1} - X c_star
  CVector eigenvalues;  // spectral_order of companion_from(c_star)
  CMatrix modes;        // m x n, column j pairs with eigenvalues(j)
  CMatrix unit_eigenvectors;  // n x n right eigenvectors of the companion matrix
  Eigen::Index companion_order = 0;
  // Set when two eigenvalues are within 1e-6; modes then hold X * unit eigenvectors.
  bool degenerate = false;
  PipelineDescriptor pipeline;
};

inline constexpr double kDistinctEigenvalueGap = 1e-6;

// Eigenvalues (spectral_order) and matching unit-norm right eigenvectors of T[c].
struct CompanionEigen {
  CVector values;
  CMatrix vectors;
};
CompanionEigen companion_eigen(const CVector& c);

double min_pairwise_gap(const CVector& values);

DmdModel fit_companion(const TimeSeries& z, SvdThreshold tol = {});
DmdModel fit_companion(const TimeSeries& z, const PipelineDescriptor& pipeline, SvdThreshold tol = {});

// D Lambda V^{-1} + r e_n^H, the model's reproduction of Y.
CMatrix reconstruct(const DmdModel& model, const CMatrix& x);

// X_test c_star.
CVector forecast(const DmdModel& model, const CMatrix& x_test);

// ||X v|| for every unit eigenvector of the model's companion matrix.
RVector unit_mode_norms(const DmdModel& model, const CMatrix& x);

}  // namespace cdmd
