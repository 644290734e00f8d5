#pragma once

#include <cmath>
#include <random>

#include "cdmd/linalg.hpp"

namespace testing {

using cdmd::CMatrix;
using cdmd::CVector;
using cdmd::cplx;

inline CMatrix random_matrix(Eigen::Index r, Eigen::Index c, std::mt19937_64& g) {
  std::normal_distribution<double> n;
  CMatrix a(r, c);
  for (Eigen::Index j = 0; j < c; ++j)
    for (Eigen::Index i = 0; i < r; ++i) a(i, j) = cplx(n(g), n(g));
  return a;
}

inline CVector random_vector(Eigen::Index r, std::mt19937_64& g) { return random_matrix(r, 1, g).col(0); }

inline double rel_err(const CMatrix& a, const CMatrix& b) {
  const double s = std::max(b.norm(), 1e-300);
  return (a - b).norm() / s;
}

// Max over a of the distance to the nearest element of b.
inline double match_distance(const CVector& a, const CVector& b) {
  double worst = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    double best = 1e300;
    for (Eigen::Index j = 0; j < b.size(); ++j) best = std::min(best, std::abs(a(i) - b(j)));
    worst = std::max(worst, best);
  }
  return worst;
}

inline CVector roots_of_unity(int p) {
  CVector v(p);
  for (int j = 0; j < p; ++j) v(j) = std::polar(1.0, 2 * M_PI * (j + 1) / p);
  v(p - 1) = 1.0;
  return v;
}

}  // namespace testing
