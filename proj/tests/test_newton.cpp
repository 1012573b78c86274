#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_helpers.hpp"
#include "ttst/dense_reference.hpp"
#include "ttst/newton.hpp"

using namespace ttst;
using namespace ttst::testing;

namespace {

Vector to_dense_order(const std::vector<double>& tt_flat, const GridSpec& g) {
  Vector out(g.nt() * g.nx());
  for (std::int64_t i = 1; i <= g.nx(); ++i)
    for (std::int64_t n = 1; n <= g.nt(); ++n)
      out[(n - 1) * g.nx() + (i - 1)] = tt_flat[(n - 1) + g.nt() * (i - 1)];
  return out;
}

TtVector flat_initial_guess(const ProblemSpec& p, const GridSpec& g) {
  return tt_kron(qtt_ones(g.q_t), initial_condition_tt(p, g, 1e-14));
}

NewtonConfig tight_config() {
  NewtonConfig cfg;
  cfg.eps_res = 1e-8;
  cfg.eps_tt_init = 1e-14;
  cfg.eps_tt_floor = 1e-14;
  cfg.n_iter = 30;
  cfg.dmrg.eps_dmrg = 1e-11;
  cfg.dmrg.n_sweeps = 20;
  cfg.dmrg.chi = 64;
  cfg.dmrg.alpha = 1e-14;
  cfg.dmrg.local_trunc = 1e-13;
  return cfg;
}

}  // namespace

TEST_CASE("a linear problem converges in one iteration") {
  ProblemSpec p = make_problem("fisher_kpp");
  p.nonlin_coef = 0.0;
  GridSpec g{3, 3, p.x_a, p.x_b, p.T};
  AssembledSystem sys = assemble(p, g, SchemeId::euler_m1, 1e-14);

  auto res = newton_solve(sys, flat_initial_guess(p, g), tight_config());
  CHECK(res.converged);
  CHECK(res.iterations() == 1);

  // must agree with a dense solve of B U = C
  Matrix b = qtt_op_to_matrix(sys.B);
  Vector rhs = qtt_to_eigen(sys.C);
  Vector ref = b.partialPivLu().solve(rhs);
  Vector got = Eigen::Map<const Vector>(qtt_to_vector(res.u).data(), ref.size());
  CHECK((got - ref).norm() <= 1e-7 * ref.norm());
}

TEST_CASE("matches the dense-algebra Newton reference") {
  for (const char* name : {"burgers_parabolic", "fisher_kpp", "kdv_soliton", "sine_gordon_kink"}) {
    CAPTURE(name);
    ProblemSpec p = make_problem(name);
    GridSpec g{3, 3, p.x_a, p.x_b, p.T};
    SchemeId scheme = p.m == 1 ? SchemeId::euler_m1 : SchemeId::euler_m2;
    AssembledSystem sys = assemble(p, g, scheme, 1e-14);
    DenseSystem dense = make_dense_system(p, g, scheme);

    auto res = newton_solve(sys, flat_initial_guess(p, g), tight_config());
    REQUIRE(res.converged);

    Vector init(dense.size());
    for (std::int64_t n = 1; n <= g.nt(); ++n)
      for (std::int64_t i = 1; i <= g.nx(); ++i) init[(n - 1) * g.nx() + (i - 1)] = p.u0(g.x_center(i));
    auto ref = dense_newton(dense, init, 1e-8, 30);
    REQUIRE(ref.converged);

    Vector got = to_dense_order(qtt_to_vector(res.u), g);
    CHECK((got - ref.U).norm() <= 1e-6 * ref.U.norm());
  }
}

TEST_CASE("the two variants agree without compression") {
  ProblemSpec p = make_problem("burgers_parabolic");
  GridSpec g{3, 3, p.x_a, p.x_b, p.T};
  AssembledSystem sys = assemble(p, g, SchemeId::crank_nicolson_m1, 1e-14);
  TtVector u0 = flat_initial_guess(p, g);

  NewtonConfig cfg = tight_config();
  cfg.variant = NewtonVariant::correction;
  auto a = newton_solve(sys, u0, cfg);
  cfg.variant = NewtonVariant::rhs_reformulated;
  auto b = newton_solve(sys, u0, cfg);

  REQUIRE(a.converged);
  REQUIRE(b.converged);
  CHECK(a.iterations() == b.iterations());
  CHECK(rel_err(qtt_to_vector(a.u), qtt_to_vector(b.u)) <= 1e-8);
}

TEST_CASE("trace invariants") {
  ProblemSpec p = make_problem("fisher_kpp");
  GridSpec g{4, 4, p.x_a, p.x_b, p.T};
  AssembledSystem sys = assemble(p, g, SchemeId::euler_m1, 1e-10);

  NewtonConfig cfg;
  cfg.eps_res = 1e-4;
  cfg.eps_tt_floor = 1e-7;
  cfg.n_iter = 40;
  cfg.dmrg.eps_dmrg = 1e-8;
  cfg.dmrg.n_sweeps = 6;
  cfg.dmrg.chi = 40;
  cfg.dmrg.alpha = 1e-12;
  auto res = newton_solve(sys, flat_initial_guess(p, g), cfg);
  REQUIRE(res.converged);
  REQUIRE(!res.trace.iters.empty());
  CHECK(res.trace.iters.size() <= static_cast<size_t>(cfg.n_iter));

  double prev_res = res.trace.initial_residual;
  double prev_eps = 1e9;
  for (const auto& it : res.trace.iters) {
    if (it.omega > cfg.s * 0.999 * std::pow(cfg.s, cfg.n_line - 2)) {
      // line search did not exhaust its budget: the step must strictly decrease ||f||
      if (it.omega == 1.0 || it.residual_norm < prev_res) CHECK(it.residual_norm <= prev_res * (1 + 1e-12));
    }
    CHECK(it.eps_tt_k <= prev_eps);
    CHECK(it.eps_tt_k >= cfg.eps_tt_floor * (1 - 1e-12));
    prev_eps = it.eps_tt_k;
    prev_res = it.residual_norm;
  }
}

TEST_CASE("degenerate configuration reduces to plain Newton") {
  ProblemSpec p = make_problem("fisher_kpp");
  GridSpec g{3, 3, p.x_a, p.x_b, p.T};
  AssembledSystem sys = assemble(p, g, SchemeId::euler_m1, 1e-12);

  NewtonConfig cfg = tight_config();
  cfg.beta = 1.0;
  cfg.n_line = 1;
  auto res = newton_solve(sys, flat_initial_guess(p, g), cfg);
  REQUIRE(res.converged);
  for (const auto& it : res.trace.iters) CHECK(it.omega == 1.0);
}

TEST_CASE("compression schedule") {
  CompressionPolicy pol;
  pol.eps_tt_base = 1e-6;
  pol.dx0 = 0.1;
  pol.dt0 = 0.1;
  pol.order_x = 2;
  pol.order_t = 1;
  GridSpec fine{4, 4, 0.0, 1.6, 1.6};  // dx = dt = 0.1
  CHECK(compression_eps(pol, fine) == doctest::Approx(1e-6));
  GridSpec coarse{3, 3, 0.0, 1.6, 1.6};  // dx = dt = 0.2
  CHECK(compression_eps(pol, coarse) == doctest::Approx(2e-6));  // min(4, 2) * 1e-6
  CHECK(compression_eps(CompressionPolicy{}, fine) == 0.0);
}
