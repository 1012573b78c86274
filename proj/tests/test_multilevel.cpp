#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_helpers.hpp"
#include "ttst/multilevel.hpp"

using namespace ttst;
using namespace ttst::testing;

namespace {

// independent stencil assembly of the 2^{q+1} x 2^q interpolation matrix
Matrix dense_prolong(int q, Centering c) {
  const std::int64_t n = std::int64_t{1} << q;
  Matrix p = Matrix::Zero(2 * n, n);
  for (std::int64_t j = 0; j < n; ++j) {
    if (c == Centering::cell) {
      p(2 * j, j) += 0.75;
      p(2 * j, j > 0 ? j - 1 : 0) += 0.25;
      p(2 * j + 1, j) += 0.75;
      p(2 * j + 1, j + 1 < n ? j + 1 : n - 1) += 0.25;
    } else {
      p(2 * j + 1, j) += 1.0;
      p(2 * j, j) += 0.5;
      p(2 * j, j > 0 ? j - 1 : 0) += 0.5;
    }
  }
  return p;
}

std::vector<double> apply_1d(int q, Centering c, const std::vector<double>& coarse) {
  auto fine = prolong_1d_apply(prolong_1d(q, c), qtt_from_vector(coarse, 1e-14));
  return qtt_to_vector(fine);
}

NewtonConfig bench_config() {
  NewtonConfig cfg;
  cfg.eps_res = 1e-5;
  cfg.eps_tt_init = 1e-6;
  cfg.eps_tt_floor = 1e-6;
  cfg.dmrg.eps_dmrg = 1e-3;
  cfg.dmrg.n_sweeps = 3;
  cfg.dmrg.chi = 20;
  cfg.dmrg.alpha = 1e-12;
  return cfg;
}

}  // namespace

TEST_CASE("prolongation preserves constants and interior linears") {
  for (Centering c : {Centering::cell, Centering::node}) {
    for (int q : {2, 3, 5}) {
      CAPTURE(q);
      const std::int64_t n = std::int64_t{1} << q;
      auto fine = apply_1d(q, c, std::vector<double>(n, 3.5));
      for (double v : fine) CHECK(v == doctest::Approx(3.5).epsilon(1e-12));

      std::vector<double> ramp(n);
      for (std::int64_t j = 0; j < n; ++j) ramp[j] = 0.3 + 1.7 * static_cast<double>(j);
      auto framp = apply_1d(q, c, ramp);
      if (c == Centering::cell) {
        // fine cell p sits at coarse coordinate (p - 1/2) / 2 relative to cell 0
        for (std::int64_t p = 1; p + 1 < 2 * n; ++p)
          CHECK(framp[p] == doctest::Approx(0.3 + 1.7 * (static_cast<double>(p) - 0.5) / 2.0).epsilon(1e-12));
      } else {
        // fine node p interpolates coarse node coordinate (p - 1) / 2
        for (std::int64_t p = 1; p < 2 * n; ++p)
          CHECK(framp[p] == doctest::Approx(0.3 + 1.7 * (static_cast<double>(p) - 1.0) / 2.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("1d prolongation equals the dense stencil") {
  for (Centering c : {Centering::cell, Centering::node}) {
    const int q = 3;
    auto coarse = random_vector(std::int64_t{1} << q);
    Matrix pd = dense_prolong(q, c);
    Vector ref = pd * Eigen::Map<const Vector>(coarse.data(), static_cast<Eigen::Index>(coarse.size()));
    auto got = apply_1d(q, c, coarse);
    for (Eigen::Index i = 0; i < ref.size(); ++i) CHECK(got[i] == doctest::Approx(ref[i]).epsilon(1e-11));
  }
}

TEST_CASE("space-time prolongation matches the dense kronecker oracle") {
  const int qt = 3, qx = 3;
  const std::int64_t nt = 8, nx = 8;
  auto coarse = random_vector(nt * nx);  // flat index (n-1) + nt*(i-1)
  Matrix pt = dense_prolong(qt, Centering::node);
  Matrix px = dense_prolong(qx, Centering::cell);
  std::vector<double> ref(4 * nt * nx, 0.0);
  for (std::int64_t ii = 0; ii < 2 * nx; ++ii)
    for (std::int64_t nn = 0; nn < 2 * nt; ++nn) {
      double s = 0.0;
      for (std::int64_t i = 0; i < nx; ++i)
        for (std::int64_t n = 0; n < nt; ++n) s += pt(nn, n) * px(ii, i) * coarse[n + nt * i];
      ref[nn + 2 * nt * ii] = s;
    }
  auto got = qtt_to_vector(prolong_field(qtt_from_vector(coarse, 1e-14), qt, qx, 1e-12));
  CHECK(rel_err(got, ref) <= 1e-10);
}

TEST_CASE("kronecker structure survives prolongation") {
  const int qt = 3, qx = 4;
  GridSpec g{qx, qt, -2.0, 2.0, 1.0};
  ProblemSpec p = make_problem("fisher_kpp");
  TtVector u = coarse_initial_guess(initial_condition_tt(p, g, 1e-12), qt);
  // rank across the time/space boundary stays 1, so the result is still 1_t kron (P_x U0)
  TtVector fine = prolong_field(u, qt, qx, 1e-12);
  CHECK(fine.ranks()[qt + 1] == 1);
  auto fine_flat = qtt_to_vector(fine);
  auto space = qtt_to_vector(prolong_1d_apply(prolong_1d(qx, Centering::cell),
                                              initial_condition_tt(p, g, 1e-12)));
  const std::int64_t ntf = std::int64_t{1} << (qt + 1);
  for (std::int64_t i = 0; i < (std::int64_t{1} << (qx + 1)); ++i)
    for (std::int64_t n = 0; n < ntf; ++n)
      CHECK(fine_flat[n + ntf * i] == doctest::Approx(space[i]).epsilon(1e-10));
}

TEST_CASE("ones-in-time initial guess") {
  ProblemSpec p = make_problem("fisher_kpp");
  GridSpec g{3, 3, p.x_a, p.x_b, p.T};
  TtVector u0 = initial_condition_tt(p, g, 1e-13);
  TtVector guess = coarse_initial_guess(u0, g.q_t);
  for (int k = 1; k <= g.q_t; ++k) CHECK(guess.ranks()[k] == 1);
  CHECK(tt_norm(guess) == doctest::Approx(std::sqrt(8.0) * tt_norm(u0)).epsilon(1e-12));
  auto flat = qtt_to_vector(guess);
  auto u0v = qtt_to_vector(u0);
  for (std::int64_t i = 0; i < g.nx(); ++i)
    for (std::int64_t n = 0; n < g.nt(); ++n)
      CHECK(flat[n + g.nt() * i] == doctest::Approx(u0v[i]).epsilon(1e-12));
}

TEST_CASE("a single level reduces to the plain solver") {
  ProblemSpec p = make_problem("burgers_parabolic");
  GridSpec g{4, 4, p.x_a, p.x_b, p.T};
  NewtonConfig cfg = bench_config();
  LevelPlan plan;
  plan.n_levels = 1;
  auto ml = multilevel_solve(p, g, SchemeId::euler_m1, plan, cfg);
  AssembledSystem sys = assemble(p, g, SchemeId::euler_m1, cfg.eps_tt_floor);
  auto sl = newton_solve(sys, coarse_initial_guess(initial_condition_tt(p, g, cfg.eps_tt_floor), g.q_t), cfg);
  REQUIRE(ml.converged);
  REQUIRE(sl.converged);
  CHECK(ml.finest_iterations() == sl.iterations());
  CHECK(rel_err(qtt_to_vector(ml.u), qtt_to_vector(sl.u)) <= 1e-10);
}

TEST_CASE("levels run strictly coarse to fine and the prolonged guess helps") {
  ProblemSpec p = make_problem("fisher_kpp");
  GridSpec g{6, 6, p.x_a, p.x_b, p.T};
  LevelPlan plan;
  plan.n_levels = 5;  // min(q_x, q_t) - 1
  auto ml = multilevel_solve(p, g, SchemeId::euler_m1, plan, bench_config());
  REQUIRE(ml.converged);
  REQUIRE(ml.levels.size() == 5);
  for (size_t i = 0; i < ml.levels.size(); ++i) {
    CHECK(ml.levels[i].grid.q_x == 2 + static_cast<int>(i));
    CHECK(ml.levels[i].converged);
    if (i > 0) {
      CHECK(std::isfinite(ml.levels[i].guess_residual));
      // on fine enough grids the prolonged guess must beat the naive one
      if (ml.levels[i].grid.q_x >= 6) CHECK(ml.levels[i].guess_residual < ml.levels[i].naive_residual);
    }
  }
}

TEST_CASE("rejects inconsistent plans") {
  ProblemSpec p = make_problem("fisher_kpp");
  GridSpec g{4, 4, p.x_a, p.x_b, p.T};
  LevelPlan plan;
  plan.n_levels = 4;  // coarsest would be 2^1
  CHECK_THROWS(multilevel_solve(p, g, SchemeId::euler_m1, plan, bench_config()));
  plan.n_levels = 2;
  plan.overrides.resize(1);
  CHECK_THROWS(multilevel_solve(p, g, SchemeId::euler_m1, plan, bench_config()));
  CHECK_THROWS(prolong_1d(1, Centering::cell));
}
