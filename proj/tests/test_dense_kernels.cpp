#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_helpers.hpp"
#include "ttst/dense_kernels.hpp"

using namespace ttst;

TEST_CASE("svd of identity") {
  SvdResult r = svd(Matrix::Identity(3, 3));
  for (int i = 0; i < 3; ++i) CHECK(r.s[i] == doctest::Approx(1.0));
}

TEST_CASE("svd of diagonal matrix") {
  Matrix m = Matrix::Zero(3, 3);
  m.diagonal() << 3, 2, 1;
  SvdResult r = svd(m);
  CHECK(r.s[0] == doctest::Approx(3.0));
  CHECK(r.s[1] == doctest::Approx(2.0));
  CHECK(r.s[2] == doctest::Approx(1.0));
}

TEST_CASE("svd reconstructs a random 8x5 matrix") {
  Matrix m = Matrix::Random(8, 5);
  SvdResult r = svd(m);
  Matrix rec = r.u * r.s.asDiagonal() * r.vt;
  CHECK((rec - m).norm() <= 1e-12 * m.norm());
  CHECK((r.u.transpose() * r.u - Matrix::Identity(5, 5)).norm() <= 1e-12);
  CHECK((r.vt * r.vt.transpose() - Matrix::Identity(5, 5)).norm() <= 1e-12);
}

TEST_CASE("singular values of M and M^T agree") {
  for (int trial = 0; trial < 5; ++trial) {
    Matrix m = Matrix::Random(7, 4);
    Vector s1 = svd(m).s, s2 = svd(Matrix(m.transpose())).s;
    CHECK((s1 - s2).norm() <= 1e-12 * s1.norm());
  }
}

TEST_CASE("qr basics") {
  auto [qi, ri] = qr(Matrix::Identity(4, 4));
  CHECK((qi.cwiseAbs() - Matrix::Identity(4, 4)).norm() <= 1e-14);

  Matrix col(2, 1);
  col << 3, 4;
  auto [q, r] = qr(col);
  CHECK(std::abs(r(0, 0)) == doctest::Approx(5.0));

  Matrix m = Matrix::Random(6, 4);
  auto [q2, r2] = qr(m);
  CHECK((q2.transpose() * q2 - Matrix::Identity(4, 4)).norm() <= 1e-12);
  CHECK((q2 * r2 - m).norm() <= 1e-12 * m.norm());
  for (int i = 1; i < 4; ++i)
    for (int j = 0; j < i; ++j) CHECK(r2(i, j) == 0.0);
}

TEST_CASE("qr then svd of R reproduces singular values") {
  Matrix m = Matrix::Random(9, 5);
  auto [q, r] = qr(m);
  Vector s1 = svd(m).s, s2 = svd(r).s;
  CHECK((s1 - s2).norm() <= 1e-12 * s1.norm());
}

TEST_CASE("tikhonov_solve identity cases") {
  Vector b = Vector::Random(4);
  Vector x0 = tikhonov_solve(Matrix::Identity(4, 4), b, 0.0);
  CHECK((x0 - b).norm() <= 1e-12);
  Vector x1 = tikhonov_solve(Matrix::Identity(4, 4), b, 1.0);
  CHECK((x1 - b / 2).norm() <= 1e-12);
}

TEST_CASE("tikhonov_solve matches dense solve for tiny alpha") {
  Matrix a = Matrix::Random(10, 10) + 5.0 * Matrix::Identity(10, 10);
  Vector b = Vector::Random(10);
  Vector x = tikhonov_solve(a, b, 1e-12);
  Vector ref = a.partialPivLu().solve(b);
  CHECK((x - ref).norm() <= 1e-8 * ref.norm());
}

TEST_CASE("tikhonov_solve norm is monotone in alpha") {
  Matrix a = Matrix::Random(8, 6);
  Vector b = Vector::Random(8);
  double prev = tikhonov_solve(a, b, 1e-8).norm();
  for (double alpha : {1e-6, 1e-4, 1e-2, 1.0, 100.0}) {
    double cur = tikhonov_solve(a, b, alpha).norm();
    CHECK(cur <= prev + 1e-12);
    prev = cur;
  }
}

TEST_CASE("truncation_rank keeps the Frobenius tail under eps") {
  Vector s(5);
  s << 10, 1, 0.1, 0.01, 0.001;
  CHECK(truncation_rank(s, 1e-12) == 5);
  CHECK(truncation_rank(s, 0.5) == 1);
  int k = truncation_rank(s, 1e-2);
  double tail = 0.0;
  for (int j = k; j < 5; ++j) tail += s[j] * s[j];
  CHECK(std::sqrt(tail) <= 1e-2 * s.norm());
}

TEST_CASE("svd reconstructs rank-deficient wide matrices") {
  // exercises the guarded fallback path: BDCSVD in Eigen 3.4 can silently drop
  // singular values on some rank-deficient inputs
  std::mt19937 gen(987654u);
  std::normal_distribution<double> dist;
  for (int trial = 0; trial < 50; ++trial) {
    const int rows = 8 + trial % 12, cols = rows + 8, rank = 2 + trial % 7;
    Matrix b(rows, rank), c(rank, cols);
    for (int i = 0; i < b.size(); ++i) b.data()[i] = dist(gen);
    for (int i = 0; i < c.size(); ++i) c.data()[i] = dist(gen);
    Matrix m = b * c;
    SvdResult dec = svd(m);
    CHECK((m - dec.u * dec.s.asDiagonal() * dec.vt).norm() <= 1e-10 * (1.0 + m.norm()));
  }
}
