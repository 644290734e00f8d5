#include "cdmd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cdmd {

SvdThreshold::SvdThreshold(double rel) : relative_tolerance(rel) {
  if (!(rel > 0.0 && rel < 1.0)) throw InvalidArgument("svd threshold must lie in (0, 1)");
}

bool all_finite(const CMatrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
  return true;
}

void require_finite(const CMatrix& a, const char* what) {
  if (!all_finite(a)) throw InvalidArgument(std::string(what) + ": non-finite entry");
}

TruncatedSvd truncated_svd(const CMatrix& a, SvdThreshold tol) {
  require_finite(a, "svd");
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  TruncatedSvd out;
  out.s = svd.singularValues();
  out.u = svd.matrixU();
  out.v = svd.matrixV();
  double smax = out.s.size() ? out.s(0) : 0.0;
  Eigen::Index k = 0;
  if (smax > 0.0)
    while (k < out.s.size() && out.s(k) > tol.relative_tolerance * smax) ++k;
  out.rank = k;
  return out;
}

CVector min_norm_lstsq(const CMatrix& a, const CVector& b, SvdThreshold tol) {
  if (a.rows() != b.size()) throw InvalidArgument("min_norm_lstsq: dimension mismatch");
  require_finite(b, "min_norm_lstsq");
  TruncatedSvd svd = truncated_svd(a, tol);
  const Eigen::Index k = svd.rank;
  CVector coef = svd.u.leftCols(k).adjoint() * b;
  for (Eigen::Index i = 0; i < k; ++i) coef(i) /= svd.s(i);
  return svd.v.leftCols(k) * coef;
}

CMatrix pseudo_inverse(const CMatrix& a, SvdThreshold tol) {
  TruncatedSvd svd = truncated_svd(a, tol);
  const Eigen::Index k = svd.rank;
  CMatrix vs = svd.v.leftCols(k);
  for (Eigen::Index i = 0; i < k; ++i) vs.col(i) /= svd.s(i);
  return vs * svd.u.leftCols(k).adjoint();
}

CMatrix vandermonde(const CVector& nodes, Eigen::Index num_cols) {
  if (nodes.size() == 0) throw InvalidArgument("vandermonde: empty nodes");
  if (num_cols < 1) throw InvalidArgument("vandermonde: num_cols must be >= 1");
  CMatrix v(nodes.size(), num_cols);
  for (Eigen::Index i = 0; i < nodes.size(); ++i) {
    cplx p = 1.0;
    for (Eigen::Index j = 0; j < num_cols; ++j) {
      v(i, j) = p;
      p *= nodes(i);
    }
  }
  return v;
}

CMatrix companion_from(const CVector& c) {
  const Eigen::Index n = c.size();
  if (n < 1) throw InvalidArgument("companion_from: empty coefficient vector");
  CMatrix t = CMatrix::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) t(i, i - 1) = 1.0;
  t.col(n - 1) = c;
  return t;
}

CVector gp_vector(cplx lambda, Eigen::Index length) {
  if (length < 1) throw InvalidArgument("gp_vector: length must be >= 1");
  CVector g(length);
  cplx p = 1.0;
  for (Eigen::Index i = 0; i < length; ++i) {
    g(i) = p;
    p *= lambda;
  }
  return g;
}

CVector nullspace_projection(const CMatrix& a, const CVector& v, SvdThreshold tol) {
  if (a.cols() != v.size()) throw InvalidArgument("nullspace_projection: dimension mismatch");
  TruncatedSvd svd = truncated_svd(a, tol);
  auto vk = svd.v.leftCols(svd.rank);
  return v - vk * (vk.adjoint() * v);
}

Eigen::Index numerical_rank(const CMatrix& a, SvdThreshold tol) {
  return truncated_svd(a, tol).rank;
}

CMatrix low_rank_approx(const CMatrix& a, Eigen::Index k) {
  if (k < 1 || k > std::min(a.rows(), a.cols()))
    throw InvalidArgument("low_rank_approx: rank out of range");
  require_finite(a, "low_rank_approx");
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU().leftCols(k) * svd.singularValues().head(k).asDiagonal() *
         svd.matrixV().leftCols(k).adjoint();
}

double principal_phase(cplx z) {
  const double a = std::arg(z);
  return a <= -M_PI ? M_PI : a;
}

std::vector<Eigen::Index> spectral_order(const CVector& values) {
  std::vector<Eigen::Index> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::abs(values(a)) > std::abs(values(b));
  });
  // Group near-equal moduli against the group leader, then order each group by phase.
  std::size_t start = 0;
  while (start < idx.size()) {
    std::size_t end = start + 1;
    const double lead = std::abs(values(idx[start]));
    while (end < idx.size() && lead - std::abs(values(idx[end])) <= 1e-9 * std::max(1.0, lead)) ++end;
    std::stable_sort(idx.begin() + start, idx.begin() + end, [&](Eigen::Index a, Eigen::Index b) {
      return principal_phase(values(a)) < principal_phase(values(b));
    });
    start = end;
  }
  return idx;
}

CVector ones(Eigen::Index n) { return CVector::Constant(n, cplx(1.0, 0.0)); }

}  // namespace cdmd
