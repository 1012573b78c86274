#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_helpers.hpp"
#include "ttst/dmrg.hpp"
#include "ttst/qtt_operators.hpp"

using namespace ttst;
using namespace ttst::testing;

namespace {

TtVector random_qtt_vector(int q, double eps = 1e-14) {
  auto v = random_vector(std::int64_t{1} << q);
  return qtt_from_vector(v, eps);
}

// dense frame-projected local system, computed from scratch: F^T J F and F^T b
// with F the interface frame of all cores outside the active pair
std::pair<Matrix, Vector> scratch_local_system(const TtOperator& j, const TtVector& b, const TtVector& x,
                                               int k) {
  const int d = x.order();
  Matrix lmat = Matrix::Ones(1, 1);
  for (int c = 0; c < k; ++c) {
    const auto& g = x.cores[c];
    Matrix next = Matrix::Zero(lmat.rows() * g.n, g.r1);
    for (Eigen::Index row = 0; row < lmat.rows(); ++row)
      for (int i = 0; i < g.n; ++i)
        for (int bb = 0; bb < g.r1; ++bb) {
          double s = 0;
          for (int a = 0; a < g.r0; ++a) s += lmat(row, a) * g.at(a, i, bb);
          next(row * g.n + i, bb) = s;
        }
    lmat = std::move(next);
  }
  Matrix rmat = Matrix::Ones(1, 1);
  for (int c = d - 1; c >= k + 2; --c) {
    const auto& g = x.cores[c];
    Matrix next = Matrix::Zero(g.r0, g.n * rmat.cols());
    for (int a = 0; a < g.r0; ++a)
      for (int i = 0; i < g.n; ++i)
        for (Eigen::Index col = 0; col < rmat.cols(); ++col) {
          double s = 0;
          for (int bb = 0; bb < g.r1; ++bb) s += g.at(a, i, bb) * rmat(bb, col);
          next(a, i * rmat.cols() + col) = s;
        }
    rmat = std::move(next);
  }
  const int np = x.cores[k].n * x.cores[k + 1].n;
  const Eigen::Index rows_full = lmat.rows() * np * rmat.cols();
  const Eigen::Index cols_loc = lmat.cols() * np * rmat.rows();
  Matrix frame = Matrix::Zero(rows_full, cols_loc);
  for (Eigen::Index il = 0; il < lmat.rows(); ++il)
    for (int ip = 0; ip < np; ++ip)
      for (Eigen::Index ir = 0; ir < rmat.cols(); ++ir)
        for (Eigen::Index a = 0; a < lmat.cols(); ++a)
          for (Eigen::Index bb = 0; bb < rmat.rows(); ++bb)
            frame((il * np + ip) * rmat.cols() + ir, (a * np + ip) * rmat.rows() + bb) =
                lmat(il, a) * rmat(bb, ir);
  Matrix jd = tt_op_to_dense(j);
  auto bf = tt_to_full(b);
  Vector bd = Eigen::Map<const Vector>(bf.data(), static_cast<Eigen::Index>(bf.size()));
  return {frame.transpose() * jd * frame, frame.transpose() * bd};
}

}  // namespace

TEST_CASE("identity operator returns the right-hand side") {
  TtVector b = random_qtt_vector(6);
  DmrgConfig cfg;
  cfg.eps_dmrg = 1e-12;
  auto res = dmrg_solve(qtt_identity(6), b, cfg);
  CHECK(res.achieved_residual <= 1e-12);
  CHECK(res.sweeps_used <= 1);
  CHECK(rel_err(qtt_to_vector(res.x), qtt_to_vector(b)) <= 1e-10);
}

TEST_CASE("diagonal operator matches the elementwise solve") {
  const int q = 6;
  std::uniform_real_distribution<double> u(0.5, 2.0);
  std::vector<double> d(std::int64_t{1} << q);
  for (auto& v : d) v = u(rng());
  auto bvec = random_vector(std::int64_t{1} << q);
  TtOperator j = tt_diag(qtt_from_vector(d, 1e-14));
  TtVector b = qtt_from_vector(bvec, 1e-14);
  DmrgConfig cfg;
  cfg.eps_dmrg = 1e-10;
  cfg.n_sweeps = 12;
  cfg.alpha = 1e-14;
  auto res = dmrg_solve(j, b, cfg);
  std::vector<double> ref(d.size());
  for (size_t i = 0; i < d.size(); ++i) ref[i] = bvec[i] / d[i];
  CHECK(rel_err(qtt_to_vector(res.x), ref) <= 1e-7);
  CHECK(res.achieved_residual <= 1e-9);
}

TEST_CASE("huge alpha collapses the solution") {
  const int q = 5;
  std::uniform_real_distribution<double> u(0.5, 1.0);
  std::vector<double> d(std::int64_t{1} << q);
  for (auto& v : d) v = u(rng());
  TtOperator j = tt_diag(qtt_from_vector(d, 1e-14));
  auto bvec = random_vector(std::int64_t{1} << q);
  TtVector b = qtt_from_vector(bvec, 1e-14);
  b = tt_scale(b, 1.0 / tt_norm(b));
  DmrgConfig cfg;
  cfg.eps_dmrg = 1e-14;
  cfg.n_sweeps = 1;
  cfg.alpha = 1e6;
  auto res = dmrg_solve(j, b, cfg);
  CHECK(tt_norm(res.x) <= 2e-6);
}

TEST_CASE("matches the dense solve on random well-conditioned systems") {
  const int q = 8;
  const std::int64_t n = std::int64_t{1} << q;
  std::normal_distribution<double> dist;
  Matrix gauss(n, n);
  for (Eigen::Index i = 0; i < gauss.size(); ++i) gauss.data()[i] = dist(rng());
  Matrix a = Matrix::Identity(n, n) + (0.4 / gauss.operatorNorm()) * gauss;
  TtOperator j = qtt_op_from_matrix(a, 1e-13);
  auto bvec = random_vector(n);
  TtVector b = qtt_from_vector(bvec, 1e-14);

  DmrgConfig cfg;
  cfg.eps_dmrg = 1e-10;
  cfg.n_sweeps = 15;
  cfg.chi = 64;
  cfg.alpha = 1e-12;
  auto res = dmrg_solve(j, b, cfg);

  Vector ref = a.partialPivLu().solve(Eigen::Map<const Vector>(bvec.data(), n));
  auto got = qtt_to_vector(res.x);
  double num = 0, den = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    // dense solve is in physical index order, the TT result as well via qtt_to_vector
    num += (got[i] - ref[i]) * (got[i] - ref[i]);
    den += ref[i] * ref[i];
  }
  CHECK(std::sqrt(num / den) <= 1e-6);
}

TEST_CASE("cached local systems equal scratch-projected ones") {
  const int q = 4;
  const std::int64_t n = std::int64_t{1} << q;
  std::normal_distribution<double> dist;
  Matrix gauss(n, n);
  for (Eigen::Index i = 0; i < gauss.size(); ++i) gauss.data()[i] = dist(rng());
  Matrix a = Matrix::Identity(n, n) + (0.4 / gauss.operatorNorm()) * gauss;
  TtOperator j = qtt_op_from_matrix(a, 1e-13);
  TtVector b = random_qtt_vector(q);

  int calls = 0;
  DmrgConfig cfg;
  cfg.eps_dmrg = 1e-12;
  cfg.n_sweeps = 2;
  cfg.observe_local = [&](int k, const TtVector& x, const Matrix& a_loc, const Vector& b_loc) {
    auto [a_ref, b_ref] = scratch_local_system(j, b, x, k);
    CHECK((a_loc - a_ref).norm() <= 1e-12 * (1.0 + a_ref.norm()));
    CHECK((b_loc - b_ref).norm() <= 1e-12 * (1.0 + b_ref.norm()));
    ++calls;
  };
  auto res = dmrg_solve(j, b, cfg);
  CHECK(calls >= 2 * (q - 1));
  CHECK(res.achieved_residual <= 1e-6);
}

TEST_CASE("reported residual is the true residual") {
  const int q = 5;
  TtOperator j = tt_diag(qtt_from_vector(random_vector(std::int64_t{1} << q), 1e-14));
  TtVector b = random_qtt_vector(q);
  DmrgConfig cfg;
  cfg.eps_dmrg = 1e-2;
  cfg.n_sweeps = 2;
  auto res = dmrg_solve(j, b, cfg);
  double ref = tt_norm(tt_add(tt_matvec(j, res.x), tt_scale(b, -1.0))) / tt_norm(b);
  CHECK(res.achieved_residual == doctest::Approx(ref).epsilon(1e-10));
}

TEST_CASE("rejects malformed inputs") {
  TtVector b = random_qtt_vector(4);
  CHECK_THROWS(dmrg_solve(qtt_identity(5), b, DmrgConfig{}));
  DmrgConfig bad;
  bad.n_sweeps = 0;
  CHECK_THROWS(dmrg_solve(qtt_identity(4), b, bad));
  TtVector zero = tt_constant(b.mode_sizes(), 0.0);
  auto res = dmrg_solve(qtt_identity(4), zero, DmrgConfig{});
  CHECK(tt_norm(res.x) == 0.0);
}
