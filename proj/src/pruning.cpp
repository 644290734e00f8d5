#include "cdmd/pruning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace cdmd {

PrunedSpectrum sigma_nontriv(const DmdModel& model, const TimeSeries& z_used, double norm_threshold_rel) {
  if (!(norm_threshold_rel >= 0.0)) throw InvalidArgument("sigma_nontriv: negative threshold");
  const CMatrix x = z_used.x();
  if (x.cols() != model.companion_order || z_used.observables() != model.residual.size())
    throw InvalidArgument("sigma_nontriv: series does not match the model");
  PrunedSpectrum out;
  out.mode_norms = unit_mode_norms(model, x);
  out.norm_threshold = norm_threshold_rel * out.mode_norms.maxCoeff();
  std::vector<cplx> kept, gone;
  for (Eigen::Index j = 0; j < model.eigenvalues.size(); ++j) {
    const bool keep = out.mode_norms(j) > out.norm_threshold;
    out.kept_mask.push_back(keep);
    (keep ? kept : gone).push_back(model.eigenvalues(j));
  }
  auto as_set = [](const std::vector<cplx>& v) {
    return SpectrumSet(Eigen::Map<const CVector>(v.data(), static_cast<Eigen::Index>(v.size())), 0.0);
  };
  out.kept = as_set(kept);
  out.discarded = as_set(gone);
  return out;
}

double rho_subset(const SpectrumSet& b1, const SpectrumSet& b2) {
  if (b1.empty() || b2.empty()) throw InvalidArgument("rho_subset: empty set");
  double worst = 0.0;
  for (Eigen::Index i = 0; i < b1.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < b2.size(); ++j) best = std::min(best, std::abs(b1.values()(i) - b2.values()(j)));
    worst = std::max(worst, best);
  }
  return worst;
}

namespace {

// Ascending coefficients of prod (z - b), leading 1.
CVector monic_from_roots(const CVector& roots) {
  CVector p = CVector::Zero(roots.size() + 1);
  p(0) = 1.0;
  for (Eigen::Index k = 0; k < roots.size(); ++k) {
    for (Eigen::Index i = k + 1; i >= 1; --i) p(i) = p(i - 1) - roots(k) * p(i);
    p(0) = -roots(k) * p(0);
  }
  return p;
}

}  // namespace

CVector closest_superset_companion(const SpectrumSet& b, const CVector& c) {
  const Eigen::Index n = c.size();
  const Eigen::Index p = b.size();
  if (p == 0) throw InvalidArgument("closest_superset_companion: empty B");
  if (p > n) throw InvalidArgument("closest_superset_companion: #B exceeds companion order");
  const CVector root_poly = monic_from_roots(b.values());
  if (p == n) return -root_poly.head(n);

  // z^n - sum c_i z^(i-1) has ascending coefficients [-c; 1].  Write it as
  // root_poly * (a_0 + ... + a_{k-1} z^(k-1) + z^k) and fit a in least squares.
  const Eigen::Index k = n - p;
  CMatrix conv = CMatrix::Zero(n + 1, k);
  for (Eigen::Index j = 0; j < k; ++j) conv.col(j).segment(j, p + 1) = root_poly;
  CVector fixed = CVector::Zero(n + 1);
  fixed.segment(k, p + 1) = root_poly;
  CVector target(n + 1);
  target << -c, 1.0;
  const CMatrix lhs = conv.topRows(n);
  const CVector a = lhs.colPivHouseholderQr().solve((target - fixed).head(n));
  const CVector prod = conv * a + fixed;
  return -prod.head(n);
}

double delta_trivial(const TimeSeries& z_used, const SpectrumSet& b, const CVector& c) {
  if (z_used.snapshots() - 1 != c.size()) throw InvalidArgument("delta_trivial: series does not match c");
  const CVector gamma = closest_superset_companion(b, c);
  const CompanionEigen eig = companion_eigen(gamma);
  const RVector norms2 = (z_used.x() * eig.vectors).colwise().squaredNorm().transpose();
  std::set<Eigen::Index> matched;
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    Eigen::Index best = 0;
    double dist = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < eig.values.size(); ++j) {
      const double dj = std::abs(eig.values(j) - b.values()(i));
      if (dj < dist && !matched.count(j)) {
        dist = dj;
        best = j;
      }
    }
    if (dist > kEigenMatchTol) throw NumericalError("delta_trivial: target eigenvalue not found in superset spectrum");
    matched.insert(best);
  }
  const double total = norms2.sum();
  if (!(total > 0.0)) return 1.0;
  double inside = 0.0;
  for (auto j : matched) inside += norms2(j);
  return std::clamp(1.0 - inside / total, 0.0, 1.0);
}

double kmd_quality_value(double rho, double delta) {
  return 1.0 - std::max(1.0 - std::pow(10.0, -rho), delta);
}

KmdQualityReport kmd_quality(const TimeSeries& z_used, const SpectrumSet& b, const CVector& c) {
  KmdQualityReport rep;
  const CompanionEigen eig = companion_eigen(c);
  rep.rho_subset = rho_subset(b, SpectrumSet(eig.values, 0.0));
  if (b.size() > c.size()) {
    rep.delta_trivial = 1.0;
  } else {
    rep.superset_c = closest_superset_companion(b, c);
    rep.delta_trivial = delta_trivial(z_used, b, c);
  }
  rep.quality = kmd_quality_value(rep.rho_subset, rep.delta_trivial);
  return rep;
}

bool MsubEfficacy::succeeds_at(long n_plus_1) const {
  return p_star && n_plus_1 % *p_star == 0;
}

MsubEfficacy msub_efficacy(const SpectrumSet& spectrum, int p_max) {
  if (spectrum.empty()) throw InvalidArgument("msub_efficacy: empty spectrum");
  if (p_max < 1) throw InvalidArgument("msub_efficacy: p_max must be >= 1");
  MsubEfficacy out;
  out.one_in_spectrum = spectrum.contains(1.0, kRootOfUnityTol);
  for (int p = 1; p <= p_max && !out.p_star; ++p) {
    bool all = true;
    for (Eigen::Index i = 0; i < spectrum.size() && all; ++i)
      all = std::abs(std::pow(spectrum.values()(i), p) - 1.0) < kRootOfUnityTol;
    if (all) out.p_star = p;
  }
  return out;
}

}  // namespace cdmd
