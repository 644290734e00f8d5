#include <doctest.h>

#include <limits>

#include "cdmd/linalg.hpp"
#include "helpers.hpp"

using namespace cdmd;
using namespace testing;

TEST_CASE("min_norm_lstsq: identity returns b") {
  CVector b(3);
  b << 1.0, 2.0, 3.0;
  CHECK(rel_err(min_norm_lstsq(CMatrix::Identity(3, 3), b), b) < 1e-15);
}

TEST_CASE("min_norm_lstsq: rank-one 2x2 picks the row-space solution") {
  CMatrix a(2, 2);
  a << 1.0, 1.0, 1.0, 1.0;
  CVector b(2);
  b << 2.0, 2.0;
  CVector x = min_norm_lstsq(a, b);
  CHECK(std::abs(x(0) - 1.0) < 1e-12);
  CHECK(std::abs(x(1) - 1.0) < 1e-12);
}

TEST_CASE("min_norm_lstsq: full column rank matches normal equations") {
  std::mt19937_64 g(11);
  for (int trial = 0; trial < 20; ++trial) {
    CMatrix a = random_matrix(8, 3, g);
    CVector b = random_vector(8, g);
    CMatrix ata = a.adjoint() * a;
    CVector oracle = ata.llt().solve(a.adjoint() * b);
    CHECK(rel_err(min_norm_lstsq(a, b), oracle) < 1e-10);
  }
}

TEST_CASE("min_norm_lstsq: errors") {
  CHECK_THROWS_AS(min_norm_lstsq(CMatrix::Identity(3, 3), CVector::Ones(2)), InvalidArgument);
  CMatrix a = CMatrix::Identity(2, 2);
  a(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(min_norm_lstsq(a, CVector::Ones(2)), InvalidArgument);
  CMatrix b = CMatrix::Identity(2, 2);
  CVector v = CVector::Ones(2);
  v(1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(min_norm_lstsq(b, v), InvalidArgument);
}

TEST_CASE("svd threshold range") {
  CHECK_THROWS_AS(SvdThreshold(0.0), InvalidArgument);
  CHECK_THROWS_AS(SvdThreshold(1.0), InvalidArgument);
  CHECK_THROWS_AS(SvdThreshold(-1e-3), InvalidArgument);
  CHECK(SvdThreshold().relative_tolerance == 1e-8);
}

TEST_CASE("vandermonde examples") {
  CVector one(1);
  one << 1.0;
  CHECK(vandermonde(one, 4) == CMatrix::Ones(1, 4));
  CVector n2(2);
  n2 << 2.0, 3.0;
  CMatrix expect(2, 3);
  expect << 1, 2, 4, 1, 3, 9;
  CHECK(vandermonde(n2, 3) == expect);
  CMatrix v7 = vandermonde(roots_of_unity(7), 7);
  CHECK(v7.rows() == 7);
  CHECK(numerical_rank(v7) == 7);
  CHECK_THROWS_AS(vandermonde(CVector(), 3), InvalidArgument);
  CHECK_THROWS_AS(vandermonde(one, 0), InvalidArgument);
}

TEST_CASE("companion_from examples") {
  CVector c(2);
  c << 1.0, 0.0;
  CMatrix expect(2, 2);
  expect << 0, 1, 1, 0;
  CHECK(companion_from(c) == expect);

  CVector c3(3);
  c3 << cplx(1, 2), cplx(3, 4), cplx(5, 6);
  CMatrix t = companion_from(c3);
  CMatrix e3 = CMatrix::Zero(3, 3);
  e3(1, 0) = 1.0;
  e3(2, 1) = 1.0;
  e3.col(2) = c3;
  CHECK(t == e3);

  Eigen::ComplexEigenSolver<CMatrix> es(companion_from(c));
  CVector want(2);
  want << 1.0, -1.0;
  CHECK(match_distance(want, es.eigenvalues()) < 1e-14);
  CHECK(match_distance(es.eigenvalues(), want) < 1e-14);
  CHECK_THROWS_AS(companion_from(CVector()), InvalidArgument);
}

TEST_CASE("gp_vector examples") {
  CHECK(gp_vector(1.0, 5) == CVector::Ones(5));
  CVector e(4);
  e << 1, 2, 4, 8;
  CHECK(gp_vector(2.0, 4) == e);
  CVector ei(4);
  ei << 1.0, cplx(0, 1), -1.0, cplx(0, -1);
  CHECK(rel_err(gp_vector(cplx(0, 1), 4), ei) < 1e-15);
  CHECK_THROWS_AS(gp_vector(1.0, 0), InvalidArgument);
}

TEST_CASE("nullspace_projection examples") {
  CHECK(nullspace_projection(CMatrix::Identity(3, 3), CVector::Ones(3)).norm() < 1e-15);
  CMatrix a(1, 2);
  a << 1.0, 1.0;
  CHECK(nullspace_projection(a, CVector::Ones(2)).norm() < 1e-14);
  CMatrix b(1, 2);
  b << 1.0, -1.0;
  CHECK(rel_err(nullspace_projection(b, CVector::Ones(2)), CVector::Ones(2)) < 1e-15);
  CHECK_THROWS_AS(nullspace_projection(b, CVector::Ones(3)), InvalidArgument);
}

TEST_CASE("numerical_rank examples") {
  CHECK(numerical_rank(CMatrix::Identity(4, 4)) == 4);
  CHECK(numerical_rank(CMatrix::Ones(3, 3)) == 1);
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CVector nodes(7);
  for (int i = 0; i < 7; ++i) nodes(i) = std::polar(1.0, 2 * M_PI * (i + 0.3 * u(g)) / 7);
  CHECK(numerical_rank(vandermonde(nodes, 10)) == 7);
}

TEST_CASE("property: residual is orthogonal to the numerical range") {
  std::mt19937_64 g(21);
  for (int trial = 0; trial < 30; ++trial) {
    const int r = 1 + trial % 5;
    CMatrix a = random_matrix(9, r, g) * random_matrix(r, 6, g);
    CVector b = random_vector(9, g);
    CVector x = min_norm_lstsq(a, b);
    CVector res = a * x - b;
    TruncatedSvd svd = truncated_svd(a);
    CHECK((svd.u.leftCols(svd.rank).adjoint() * res).cwiseAbs().maxCoeff() < 1e-8 * b.norm());
  }
}

TEST_CASE("property: minimum norm among equal-residual solutions") {
  std::mt19937_64 g(22);
  for (int trial = 0; trial < 30; ++trial) {
    CMatrix a = random_matrix(6, 3, g) * random_matrix(3, 7, g);
    CVector b = random_vector(6, g);
    CVector x = min_norm_lstsq(a, b);
    CVector other = x + nullspace_projection(a, random_vector(7, g));
    CHECK((a * other - b).norm() == doctest::Approx((a * x - b).norm()).epsilon(1e-9));
    CHECK(x.norm() <= other.norm() + 1e-12);
  }
}

TEST_CASE("property: projector identities") {
  std::mt19937_64 g(23);
  for (int trial = 0; trial < 30; ++trial) {
    const int r = 1 + trial % 4;
    CMatrix a = random_matrix(5, r, g) * random_matrix(r, 6, g);
    CVector v = random_vector(6, g);
    CVector p = nullspace_projection(a, v);
    CHECK((nullspace_projection(a, p) - p).norm() < 1e-10 * std::max(1.0, v.norm()));
    CVector rowpart = pseudo_inverse(a) * (a * v);
    CHECK((p + rowpart - v).norm() < 1e-10 * std::max(1.0, v.norm()));
  }
}

TEST_CASE("property: vandermonde rank laws") {
  std::mt19937_64 g(24);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int r = 2; r <= 8; ++r) {
    CVector nodes(r);
    for (int i = 0; i < r; ++i) nodes(i) = std::polar(0.9 + 0.1 * u(g), 2 * M_PI * (i + 0.3 * u(g)) / r);
    for (int n = 1; n <= 12; ++n) CHECK(numerical_rank(vandermonde(nodes, n)) == std::min(n, r));
  }
}

TEST_CASE("low_rank_approx keeps the top singular directions") {
  std::mt19937_64 g(25);
  CMatrix a = random_matrix(7, 2, g) * random_matrix(2, 5, g);
  CHECK(rel_err(low_rank_approx(a, 2), a) < 1e-12);
  CHECK(numerical_rank(low_rank_approx(random_matrix(6, 6, g), 3)) == 3);
  CHECK_THROWS_AS(low_rank_approx(a, 0), InvalidArgument);
  CHECK_THROWS_AS(low_rank_approx(a, 6), InvalidArgument);
}

TEST_CASE("spectral_order: modulus descending then phase ascending") {
  CVector v(5);
  v << cplx(0.5, 0), cplx(-1, 0), cplx(0, 1), cplx(1, 0), cplx(0, -1);
  auto idx = spectral_order(v);
  REQUIRE(idx.size() == 5);
  CHECK(idx[0] == 4);  // -pi/2
  CHECK(idx[1] == 3);  // 0
  CHECK(idx[2] == 2);  // pi/2
  CHECK(idx[3] == 1);  // pi
  CHECK(idx[4] == 0);
  CHECK(principal_phase(cplx(-1, -0.0)) == doctest::Approx(M_PI));
}
