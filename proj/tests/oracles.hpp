#pragma once

#include "cdmd/linalg.hpp"
#include "cdmd/random.hpp"
#include "cdmd/systems.hpp"

namespace testing {

using cdmd::CMatrix;
using cdmd::CVector;
using cdmd::cplx;

// Mean subtraction succeeds when Z_ms, written over the node rows gp(lambda)^T (lambda != 1)
// plus a separate all-ones row, puts zero weight on the all-ones row.  The weights are found
// by least squares on that row basis, so the check only uses the data Z = C Theta.
inline bool msub_succeeds_direct(const CVector& spectrum, long n_plus_1, cdmd::Rng& rng) {
  const auto r = spectrum.size();
  CMatrix c(r, r);
  for (Eigen::Index j = 0; j < r; ++j)
    for (Eigen::Index i = 0; i < r; ++i) c(i, j) = rng.polar(0.5, 1.5);
  const CMatrix theta = cdmd::vandermonde(spectrum, n_plus_1);
  const CMatrix z = c * theta;
  const CVector mu = z.rowwise().mean();
  const CMatrix z_ms = z.colwise() - mu;

  std::vector<Eigen::Index> others;
  for (Eigen::Index i = 0; i < r; ++i)
    if (std::abs(spectrum(i) - 1.0) > 1e-9) others.push_back(i);
  const auto k = static_cast<Eigen::Index>(others.size());
  CMatrix basis(k + 1, n_plus_1);
  for (Eigen::Index i = 0; i < k; ++i) basis.row(i) = theta.row(others[i]);
  basis.row(k).setOnes();
  const CMatrix bt = basis.transpose();
  const CMatrix weights = bt.colPivHouseholderQr().solve(z_ms.transpose()).transpose();
  return weights.col(k).norm() < 1e-8 * c.norm();
}

// Unit-circle spectrum mixing roots of unity and, sometimes, a generic point.
inline CVector mixed_unit_spectrum(cdmd::Rng& rng, int& order_hint) {
  const int p = 1 + static_cast<int>(rng.uniform() * 12);
  order_hint = p;
  std::vector<cplx> v;
  for (int j = 0; j < p; ++j)
    if (rng.uniform() < 0.6) v.push_back(j == 0 ? cplx(1.0, 0.0) : std::polar(1.0, 2 * M_PI * j / p));
  if (v.empty()) v.push_back(std::polar(1.0, 2 * M_PI * (p - 1) / p));
  if (rng.uniform() < 0.35) {
    for (;;) {
      const cplx g = std::polar(1.0, rng.phase());
      bool far = std::abs(g - 1.0) > 0.2;
      for (const auto& x : v) far = far && std::abs(g - x) > 0.2;
      if (far) {
        v.push_back(g);
        order_hint = 0;
        break;
      }
    }
  }
  return Eigen::Map<const CVector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace testing
