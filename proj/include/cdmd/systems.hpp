#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "cdmd/random.hpp"
#include "cdmd/series.hpp"

namespace cdmd {

enum class LtiPreset { LTI1a, LTI1b, LTI3, Custom };

LtiPreset parse_lti_preset(const std::string& name);
const char* to_string(LtiPreset p);

struct LtiSystem {
  SpectrumSet eigenvalues{CVector()};
  CMatrix dictionary;      // m x r, nonzero entries
  CVector initial_state;   // length r, nonzero entries

  // dictionary * diag(initial_state).
  CMatrix observation() const;
};

// Eigenvalues of a preset; the seed only matters for LTI1b and LTI3.
CVector lti_spectrum(LtiPreset preset, std::uint64_t seed);

// r points with modulus in [mod_lo, mod_hi], uniform phase, pairwise |li - lj| >= min_sep.
CVector random_spectrum(int r, double mod_lo, double mod_hi, double min_sep, Rng& rng);

// Random dictionary and initial state around given eigenvalues.
LtiSystem make_lti(const CVector& eigenvalues, int m, bool full_rank_dictionary, std::uint64_t seed);
LtiSystem make_lti(LtiPreset preset, int m, bool full_rank_dictionary, std::uint64_t seed);

// C * vandermonde(eigenvalues, num_snapshots).
TimeSeries lti_trajectory(const LtiSystem& sys, Eigen::Index num_snapshots);

struct VdpConfig {
  std::array<double, 2> initial{0.1, 0.0};
  double dt = 0.01;
  int sample_stride = 10;
  int num_samples = 100;
};

using VdpState = std::array<double, 2>;
VdpState vdp_field(const VdpState& u);
VdpState rk4_step(const VdpState& u, double dt);

// 2 x num_samples states, first column = initial.
Eigen::Matrix2Xd vdp_states(const VdpConfig& cfg);
TimeSeries vdp_trajectory(const VdpConfig& cfg, const CMatrix& dictionary);

// Random 1 x 2 observable with the LTI dictionary law.
CMatrix random_vdp_dictionary(Rng& rng);

// CSV: one row per observable, one cell per snapshot.
//  Cell: real "1.5" or complex "1.5-2i".
//  Paired: cells separated by ';', each "re,im".
// An optional first row of non-numeric labels (obs_1, ...) is skipped.
enum class CsvLayout { Cell, Paired };

TimeSeries parse_csv(const std::string& text, std::string label = {});
TimeSeries ingest_csv(const std::string& path);
std::string format_csv(const TimeSeries& z, CsvLayout layout = CsvLayout::Cell);
void export_csv(const TimeSeries& z, const std::string& path, CsvLayout layout = CsvLayout::Cell);

// Shortest round-trip decimal.
std::string format_double(double v);

}  // namespace cdmd
