#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cdmd {

using cplx = std::complex<double>;
// Column-major (Eigen default); real inputs are promoted to complex.
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Bad arguments, shapes, or configuration.  CLI exit code 2.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Well-formed input that the numerics cannot handle.  CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SvdThreshold {
  double relative_tolerance = 1e-8;

  SvdThreshold() = default;
  SvdThreshold(double rel);  // NOLINT(google-explicit-constructor)
};

bool all_finite(const CMatrix& a);
void require_finite(const CMatrix& a, const char* what);

// Thin SVD of a with singular values below tol * s_max zeroed.
struct TruncatedSvd {
  CMatrix u;
  RVector s;
  CMatrix v;
  Eigen::Index rank = 0;
};
TruncatedSvd truncated_svd(const CMatrix& a, SvdThreshold tol = {});

// A^+ b with singular values below tol * s_max dropped.
CVector min_norm_lstsq(const CMatrix& a, const CVector& b, SvdThreshold tol = {});
CMatrix pseudo_inverse(const CMatrix& a, SvdThreshold tol = {});

// Row i = [1, x_i, x_i^2, ..., x_i^(num_cols-1)].
CMatrix vandermonde(const CVector& nodes, Eigen::Index num_cols);

// Ones on the first subdiagonal, c in the last column.
CMatrix companion_from(const CVector& c);

CVector gp_vector(cplx lambda, Eigen::Index length);

// (I - A^+ A) v.
CVector nullspace_projection(const CMatrix& a, const CVector& v, SvdThreshold tol = {});

Eigen::Index numerical_rank(const CMatrix& a, SvdThreshold tol = {});

// Best rank-k approximation in the Frobenius norm.
CMatrix low_rank_approx(const CMatrix& a, Eigen::Index k);

// Phase in (-pi, pi].
double principal_phase(cplx z);

// Descending modulus, ties (within 1e-9) by ascending phase in (-pi, pi].
std::vector<Eigen::Index> spectral_order(const CVector& values);

CVector ones(Eigen::Index n);

}  // namespace cdmd
