#include "cdmd/systems.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cdmd/dmd.hpp"

namespace cdmd {

LtiPreset parse_lti_preset(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (s == "lti1a") return LtiPreset::LTI1a;
  if (s == "lti1b") return LtiPreset::LTI1b;
  if (s == "lti3") return LtiPreset::LTI3;
  if (s == "custom") return LtiPreset::Custom;
  throw InvalidArgument("unknown LTI preset '" + name + "'");
}

const char* to_string(LtiPreset p) {
  switch (p) {
    case LtiPreset::LTI1a: return "lti1a";
    case LtiPreset::LTI1b: return "lti1b";
    case LtiPreset::LTI3: return "lti3";
    case LtiPreset::Custom: return "custom";
  }
  return "?";
}

CMatrix LtiSystem::observation() const { return dictionary * initial_state.asDiagonal(); }

namespace {

constexpr double kMinAngularGap = 0.2;

double angular_gap(double a, double b) {
  double d = std::fmod(std::abs(a - b), 2 * M_PI);
  return std::min(d, 2 * M_PI - d);
}

// k angles, pairwise and from angle 0 at least kMinAngularGap apart.
std::vector<double> separated_angles(int k, Rng& rng) {
  for (;;) {
    std::vector<double> a;
    for (int i = 0; i < k; ++i) a.push_back(rng.phase());
    bool ok = true;
    for (int i = 0; i < k && ok; ++i) {
      ok = angular_gap(a[i], 0.0) >= kMinAngularGap;
      for (int j = i + 1; j < k && ok; ++j) ok = angular_gap(a[i], a[j]) >= kMinAngularGap;
    }
    if (ok) return a;
  }
}

CVector ordered(const std::vector<cplx>& v) {
  CVector raw = Eigen::Map<const CVector>(v.data(), static_cast<Eigen::Index>(v.size()));
  auto idx = spectral_order(raw);
  CVector out(raw.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out(static_cast<Eigen::Index>(i)) = raw(idx[i]);
  return out;
}

}  // namespace

CVector lti_spectrum(LtiPreset preset, std::uint64_t seed) {
  Rng rng(splitmix64(seed ^ 0x5eedULL));
  std::vector<cplx> v;
  switch (preset) {
    case LtiPreset::LTI1a:
      for (int j = 1; j <= 7; ++j) v.push_back(std::polar(1.0, 2 * M_PI * j / 7.0));
      v.back() = 1.0;
      break;
    case LtiPreset::LTI1b:
      for (double a : separated_angles(7, rng)) v.push_back(std::polar(1.0, a));
      break;
    case LtiPreset::LTI3:
      for (double a : separated_angles(4, rng)) v.push_back(std::polar(1.0, a));
      for (double r : {0.97, 0.93, 0.87}) v.push_back(std::polar(r, rng.phase()));
      break;
    case LtiPreset::Custom:
      throw InvalidArgument("custom preset needs explicit eigenvalues");
  }
  return ordered(v);
}

CVector random_spectrum(int r, double mod_lo, double mod_hi, double min_sep, Rng& rng) {
  if (r < 1) throw InvalidArgument("random_spectrum: r must be >= 1");
  if (!(0.0 <= mod_lo && mod_lo <= mod_hi)) throw InvalidArgument("random_spectrum: bad modulus range");
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::vector<cplx> v;
    for (int i = 0; i < r; ++i) v.push_back(rng.polar(mod_lo, mod_hi));
    bool ok = true;
    for (int i = 0; i < r && ok; ++i)
      for (int j = i + 1; j < r && ok; ++j) ok = std::abs(v[i] - v[j]) >= min_sep;
    if (ok) return ordered(v);
  }
  throw InvalidArgument("random_spectrum: separation unreachable");
}

LtiSystem make_lti(const CVector& eigenvalues, int m, bool full_rank_dictionary, std::uint64_t seed) {
  const auto r = eigenvalues.size();
  if (m < 1) throw InvalidArgument("make_lti: m must be >= 1");
  if (r < 1) throw InvalidArgument("make_lti: empty spectrum");
  if (!(min_pairwise_gap(eigenvalues) > 0.0))
    throw InvalidArgument("make_lti: eigenvalues must be pairwise distinct");
  if (full_rank_dictionary && m < r)
    throw InvalidArgument("make_lti: full-rank dictionary needs m >= r");
  Rng rng(seed);
  LtiSystem sys;
  sys.eigenvalues = SpectrumSet(eigenvalues, 0.0);
  for (int attempt = 0;; ++attempt) {
    sys.dictionary.resize(m, r);
    for (Eigen::Index j = 0; j < r; ++j)
      for (Eigen::Index i = 0; i < m; ++i) sys.dictionary(i, j) = rng.polar(0.5, 1.5);
    if (!full_rank_dictionary || numerical_rank(sys.dictionary) == r) break;
    if (attempt > 1000) throw NumericalError("make_lti: could not draw a full-rank dictionary");
  }
  sys.initial_state.resize(r);
  for (Eigen::Index j = 0; j < r; ++j) sys.initial_state(j) = rng.polar(0.5, 1.5);
  return sys;
}

LtiSystem make_lti(LtiPreset preset, int m, bool full_rank_dictionary, std::uint64_t seed) {
  return make_lti(lti_spectrum(preset, seed), m, full_rank_dictionary, splitmix64(seed));
}

TimeSeries lti_trajectory(const LtiSystem& sys, Eigen::Index num_snapshots) {
  if (num_snapshots < 2) throw InvalidArgument("lti_trajectory: need at least 2 snapshots");
  return TimeSeries(sys.observation() * vandermonde(sys.eigenvalues.values(), num_snapshots), "lti");
}

VdpState vdp_field(const VdpState& u) { return {u[1], (1.0 - u[0] * u[0]) * u[1] - u[0]}; }

VdpState rk4_step(const VdpState& u, double dt) {
  auto axpy = [](const VdpState& a, double h, const VdpState& k) {
    return VdpState{a[0] + h * k[0], a[1] + h * k[1]};
  };
  const VdpState k1 = vdp_field(u);
  const VdpState k2 = vdp_field(axpy(u, dt / 2, k1));
  const VdpState k3 = vdp_field(axpy(u, dt / 2, k2));
  const VdpState k4 = vdp_field(axpy(u, dt, k3));
  return {u[0] + dt / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]),
          u[1] + dt / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])};
}

Eigen::Matrix2Xd vdp_states(const VdpConfig& cfg) {
  if (!(cfg.dt > 0.0) || cfg.sample_stride < 1 || cfg.num_samples < 1)
    throw InvalidArgument("vdp: dt > 0, stride >= 1 and num_samples >= 1 required");
  Eigen::Matrix2Xd out(2, cfg.num_samples);
  VdpState u = cfg.initial;
  for (int s = 0; s < cfg.num_samples; ++s) {
    out(0, s) = u[0];
    out(1, s) = u[1];
    if (s + 1 == cfg.num_samples) break;
    for (int k = 0; k < cfg.sample_stride; ++k) {
      u = rk4_step(u, cfg.dt);
      if (!std::isfinite(u[0]) || !std::isfinite(u[1])) throw NumericalError("vdp: state diverged");
    }
  }
  return out;
}

TimeSeries vdp_trajectory(const VdpConfig& cfg, const CMatrix& dictionary) {
  if (dictionary.rows() != 1 || dictionary.cols() != 2) throw InvalidArgument("vdp: dictionary must be 1x2");
  if (cfg.num_samples < 2) throw InvalidArgument("vdp: need at least 2 samples");
  return TimeSeries(dictionary * vdp_states(cfg).cast<cplx>(), "vdp");
}

CMatrix random_vdp_dictionary(Rng& rng) {
  CMatrix c(1, 2);
  c(0, 0) = rng.polar(0.5, 1.5);
  c(0, 1) = rng.polar(0.5, 1.5);
  return c;
}

}  // namespace cdmd
