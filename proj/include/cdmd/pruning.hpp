#pragma once

#include <optional>

#include "cdmd/dmd.hpp"

namespace cdmd {

inline constexpr double kModeNormThreshold = 1e-8;
inline constexpr double kEigenMatchTol = 1e-6;
inline constexpr double kRootOfUnityTol = 1e-9;

struct PrunedSpectrum {
  SpectrumSet kept{CVector()};
  SpectrumSet discarded{CVector()};
  RVector mode_norms;           // index-aligned with model.eigenvalues
  std::vector<bool> kept_mask;  // same indexing
  double norm_threshold = 0;    // absolute threshold actually applied
};

// Keeps eigenvalues whose unit-eigenvector mode norm ||X v|| exceeds rel * max.
PrunedSpectrum sigma_nontriv(const DmdModel& model, const TimeSeries& z_used,
                             double norm_threshold_rel = kModeNormThreshold);

// max_{b1} min_{b2} |b1 - b2|.
double rho_subset(const SpectrumSet& b1, const SpectrumSet& b2);

// Coefficients gamma (companion sign convention: roots of z^n - sum gamma_i z^(i-1)) closest to c
// whose companion spectrum contains B.  Example: B = {2, 3}, n = 2 gives [-6, 5].
CVector closest_superset_companion(const SpectrumSet& b, const CVector& c);

// Fraction of squared mode norm of the superset companion outside B.
double delta_trivial(const TimeSeries& z_used, const SpectrumSet& b, const CVector& c);

struct KmdQualityReport {
  double rho_subset = 0;
  double delta_trivial = 0;
  double quality = 0;
  CVector superset_c;  // empty when #B > #c
};

KmdQualityReport kmd_quality(const TimeSeries& z_used, const SpectrumSet& b, const CVector& c);
double kmd_quality_value(double rho, double delta);

struct MsubEfficacy {
  std::optional<int> p_star;
  bool one_in_spectrum = false;

  // Success of mean subtraction for a trajectory with n_plus_1 snapshots.
  bool succeeds_at(long n_plus_1) const;
};

// Assumes a Koopman-invariant dictionary.
MsubEfficacy msub_efficacy(const SpectrumSet& spectrum, int p_max = 64);

}  // namespace cdmd
