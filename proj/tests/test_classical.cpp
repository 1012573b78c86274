#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_helpers.hpp"
#include "ttst/classical.hpp"

using namespace ttst;
using namespace ttst::testing;

namespace {

Vector flatten(const Matrix& u) {
  Vector out(u.size());
  for (Eigen::Index n = 0; n < u.rows(); ++n) out.segment(n * u.cols(), u.cols()) = u.row(n).transpose();
  return out;
}

double final_slice_error(const ProblemSpec& p, const GridSpec& g, const Matrix& u) {
  double num = 0.0, den = 0.0;
  for (std::int64_t i = 1; i <= g.nx(); ++i) {
    const double ref = analytic_solution(p, g.x_center(i), g.T);
    const double e = u(g.nt() - 1, i - 1) - ref;
    num += e * e;
    den += ref * ref;
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("stepping equals the monolithic dense solve") {
  for (const char* name : {"fisher_kpp", "burgers_parabolic", "sine_gordon_kink", "kdv_soliton"}) {
    CAPTURE(name);
    ProblemSpec p = make_problem(name);
    GridSpec g{3, 3, p.x_a, p.x_b, p.T};
    SchemeId scheme = p.m == 1 ? SchemeId::euler_m1 : SchemeId::euler_m2;
    CtConfig cfg;
    cfg.eps_res = 1e-12;
    auto ct = ct_solve(p, g, scheme, cfg);

    DenseSystem sys = make_dense_system(p, g, scheme);
    Vector init(sys.size());
    for (std::int64_t n = 1; n <= g.nt(); ++n)
      for (std::int64_t i = 1; i <= g.nx(); ++i) init[(n - 1) * g.nx() + (i - 1)] = p.u0(g.x_center(i));
    auto mono = dense_newton(sys, init, 1e-12);
    REQUIRE(mono.converged);
    CHECK((flatten(ct.u) - mono.U).norm() <= 1e-8 * mono.U.norm());
  }
}

TEST_CASE("all schemes march without linear drift on zero data") {
  ProblemSpec p = make_problem("fisher_kpp");
  p.nonlin_coef = 0.0;
  p.u0 = [](double) { return 0.0; };
  p.bc_left = BoundaryCondition::dirichlet(0.0);
  p.bc_right = BoundaryCondition::dirichlet(0.0);
  GridSpec g{4, 4, p.x_a, p.x_b, p.T};
  for (SchemeId s : {SchemeId::euler_m1, SchemeId::crank_nicolson_m1}) {
    auto ct = ct_solve(p, g, s);
    CHECK(ct.u.cwiseAbs().maxCoeff() == 0.0);
    CHECK(ct.total_iterations() == 0);
  }
}

TEST_CASE("first-order temporal accuracy on the reaction-diffusion front") {
  ProblemSpec p = make_problem("fisher_kpp");
  std::vector<double> errs, dts;
  for (int q : {4, 5, 6}) {
    GridSpec g{7, q, p.x_a, p.x_b, p.T};
    auto ct = ct_solve(p, g, SchemeId::euler_m1);
    errs.push_back(final_slice_error(p, g, ct.u));
    dts.push_back(g.dt());
  }
  const double slope = std::log(errs[0] / errs[2]) / std::log(dts[0] / dts[2]);
  CHECK(slope == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("benchmark error levels") {
  // reaction-diffusion front at 2^4 x 2^4
  {
    ProblemSpec p = make_problem("fisher_kpp");
    GridSpec g{4, 4, p.x_a, p.x_b, p.T};
    auto ct = ct_solve(p, g, SchemeId::euler_m1);
    CHECK(final_slice_error(p, g, ct.u) == doctest::Approx(8.51e-3).epsilon(0.10));
  }
  // viscous advection at 2^4 x 2^4: absolute final-slice error
  {
    ProblemSpec p = make_problem("burgers_parabolic");
    GridSpec g{4, 4, p.x_a, p.x_b, p.T};
    auto ct = ct_solve(p, g, SchemeId::euler_m1);
    double abs2 = 0.0;
    for (std::int64_t i = 1; i <= g.nx(); ++i) {
      const double e = ct.u(g.nt() - 1, i - 1) - analytic_solution(p, g.x_center(i), g.T);
      abs2 += e * e * g.dx();
    }
    CHECK(std::sqrt(abs2) == doctest::Approx(4.65e-3).epsilon(0.10));
  }
}

TEST_CASE("rejects bad inputs") {
  ProblemSpec p = make_problem("fisher_kpp");
  GridSpec g{3, 3, p.x_a, p.x_b, p.T};
  CHECK_THROWS(ct_solve(p, g, SchemeId::euler_m2));
  CtConfig bad;
  bad.eps_res = -1.0;
  CHECK_THROWS(ct_solve(p, g, SchemeId::euler_m1, bad));
}
