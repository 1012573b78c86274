#include "ttst/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace ttst {
namespace {

double sech(double x) { return 1.0 / std::cosh(x); }

TtVector sample_spatial(const std::function<double(double)>& f, const GridSpec& g, double eps) {
  std::vector<double> v(g.nx());
  for (std::int64_t i = 1; i <= g.nx(); ++i) v[i - 1] = f(g.x_center(i));
  return qtt_from_vector(v, eps);
}

}  // namespace

ProblemSpec make_problem(const std::string& name, const ProblemOverrides& o) {
  ProblemSpec p;
  p.name = name;
  if (name == "fisher_kpp") {
    const double D = o.D.value_or(1.0), r = o.r.value_or(1.0), A = o.amp.value_or(1.0);
    p.m = 1;
    p.x_a = -20.0;
    p.x_b = 20.0;
    p.T = 2.0;
    p.D = D;
    p.r = r;
    p.amp = A;
    p.bc_left = BoundaryCondition::dirichlet(1.0);
    p.bc_right = BoundaryCondition::dirichlet(0.0);
    p.linear_terms = {{SpaceOp::d_xx, -D}};
    p.reaction_coef = -r;
    p.kind = NonlinearityKind::quadratic_reaction;
    p.nonlin_coef = r;
    const double c = 5.0 / std::sqrt(6.0);
    p.c = c;
    p.analytic = [A, c](double x, double t) {
      const double e = 1.0 + A * std::exp((x - c * t) / std::sqrt(6.0));
      return 1.0 / (e * e);
    };
    p.u0 = [p](double x) { return p.analytic(x, 0.0); };
  } else if (name == "burgers_parabolic") {
    const double nu = o.nu.value_or(0.01), a = o.a.value_or(1.01);
    p.m = 1;
    p.x_a = 0.0;
    p.x_b = 1.0;
    p.T = 1.0;
    p.nu = nu;
    p.amp = a;
    p.bc_left = BoundaryCondition::dirichlet(0.0);
    p.bc_right = BoundaryCondition::dirichlet(0.0);
    p.linear_terms = {{SpaceOp::d_xx, -nu}};
    p.kind = NonlinearityKind::conservative_advection;
    const double pi = M_PI;
    p.analytic = [nu, a, pi](double x, double t) {
      const double e = std::exp(-pi * pi * nu * t);
      return 2.0 * nu * pi * e * std::sin(pi * x) / (a + e * std::cos(pi * x));
    };
    p.u0 = [p](double x) { return p.analytic(x, 0.0); };
  } else if (name == "burgers_shock") {
    const double nu = o.nu.value_or(0.01);
    p.m = 1;
    p.x_a = -M_PI;
    p.x_b = M_PI;
    p.T = 1.0;
    p.nu = nu;
    p.bc_left = BoundaryCondition::dirichlet(0.0);
    p.bc_right = BoundaryCondition::dirichlet(0.0);
    p.linear_terms = {{SpaceOp::d_xx, -nu}};
    p.kind = NonlinearityKind::conservative_advection;
    p.u0 = [](double x) { return -std::sin(x); };
  } else if (name == "sine_gordon_kink") {
    const double c = o.c.value_or(0.5), x0 = o.x0.value_or(0.0);
    const double gamma = 1.0 / std::sqrt(1.0 - c * c);
    p.m = 2;
    p.x_a = -10.0;
    p.x_b = 15.0;
    p.T = 10.0;
    p.c = c;
    p.x0 = x0;
    p.bc_left = BoundaryCondition::dirichlet(0.0);
    p.bc_right = BoundaryCondition::neumann(0.0);
    p.linear_terms = {{SpaceOp::d_xx, -1.0}};
    p.kind = NonlinearityKind::sine;
    p.analytic = [c, x0, gamma](double x, double t) {
      return 4.0 * std::atan(std::exp(gamma * (x - c * t - x0)));
    };
    p.u0 = [p](double x) { return p.analytic(x, 0.0); };
    p.ut0 = [c, x0, gamma](double x) { return -2.0 * c * gamma * sech(gamma * (x - x0)); };
  } else if (name == "kdv_soliton") {
    const double c = o.c.value_or(1.0), x0 = o.x0.value_or(-1.0);
    p.m = 1;
    p.x_a = -15.0;
    p.x_b = 15.0;
    p.T = 2.0;
    p.c = c;
    p.x0 = x0;
    p.bc_left = BoundaryCondition::dirichlet(0.0);
    p.bc_right = BoundaryCondition::dirichlet(0.0);
    p.linear_terms = {{SpaceOp::d_xxx, 1.0}};
    p.kind = NonlinearityKind::conservative_advection;
    p.analytic = [c, x0](double x, double t) {
      const double s = sech(std::sqrt(c) * (x - c * t - x0) / 2.0);
      return 3.0 * c * s * s;
    };
    p.u0 = [p](double x) { return p.analytic(x, 0.0); };
  } else if (name == "manufactured_m1") {
    // u_t - u_xx + u^2 = s with exact solution e^{-t} sin(pi x); exercises the
    // second-order scheme on a case with a known smooth reference
    p.m = 1;
    p.x_a = 0.0;
    p.x_b = 1.0;
    p.T = 1.0;
    p.D = 1.0;
    p.bc_left = BoundaryCondition::dirichlet(0.0);
    p.bc_right = BoundaryCondition::dirichlet(0.0);
    p.linear_terms = {{SpaceOp::d_xx, -1.0}};
    p.kind = NonlinearityKind::quadratic_reaction;
    p.nonlin_coef = 1.0;
    const double pi = M_PI;
    p.analytic = [pi](double x, double t) { return std::exp(-t) * std::sin(pi * x); };
    p.source = [pi](double x, double t) {
      const double u = std::exp(-t) * std::sin(pi * x);
      return (pi * pi - 1.0) * u + u * u;
    };
    p.u0 = [p](double x) { return p.analytic(x, 0.0); };
  } else {
    throw std::invalid_argument("unknown problem: " + name);
  }
  return p;
}

double analytic_solution(const ProblemSpec& p, double x, double t) {
  if (!p.analytic) throw std::logic_error(p.name + " has no analytic reference");
  return p.analytic(x, t);
}

TtOperator linear_operator(const ProblemSpec& p, const GridSpec& g) {
  TtOperator l = tt_op_scale(qtt_identity(g.q_x), p.reaction_coef);
  bool have = p.reaction_coef != 0.0;
  for (const auto& term : p.linear_terms) {
    TtOperator t = tt_op_scale(build_space_operator(term.op, g.q_x, g.dx(), p.bc_left, p.bc_right), term.coef);
    l = have ? tt_op_add(l, t) : std::move(t);
    have = true;
  }
  return tt_op_round(l, 1e-14);
}

TtVector linear_constant(const ProblemSpec& p, const GridSpec& g) {
  TtVector c = tt_constant(std::vector<int>(g.q_x, 2), 0.0);
  for (const auto& term : p.linear_terms) {
    TtVector b = boundary_source(p.bc_left, p.bc_right, g.q_x, g.dx(), term.op);
    c = tt_add(c, tt_scale(b, term.coef));
  }
  return tt_round(c, 1e-15);
}

TtVector initial_condition_tt(const ProblemSpec& p, const GridSpec& g, double eps) {
  return sample_spatial(p.u0, g, eps);
}

TtVector initial_velocity_tt(const ProblemSpec& p, const GridSpec& g, double eps) {
  if (p.m != 2 || !p.ut0) throw std::logic_error("initial velocity only defined for second-order problems");
  return sample_spatial(p.ut0, g, eps);
}

bool nonlinearity_has_derivative_factor(NonlinearityKind kind) {
  return kind == NonlinearityKind::conservative_advection;
}

TtOperator advection_derivative(const ProblemSpec& p, const GridSpec& g) {
  return build_space_operator(SpaceOp::d_x, g.q_x, g.dx(), p.bc_left, p.bc_right);
}

namespace {

TtVector apply_kind(const ProblemSpec& p, const TtVector& u, const TtOperator& dx_op, double eps, int chi) {
  switch (p.kind) {
    case NonlinearityKind::quadratic_reaction:
      return tt_round(tt_scale(tt_hadamard(u, u), p.nonlin_coef), eps, chi);
    case NonlinearityKind::conservative_advection: {
      TtVector sq = tt_round(tt_hadamard(u, u), eps, chi);
      return tt_round(tt_scale(tt_matvec(dx_op, sq), 0.5), eps, chi);
    }
    case NonlinearityKind::sine:
      return tt_apply_elementwise([](double v) { return std::sin(v); }, u, eps, chi);
  }
  throw std::logic_error("unknown nonlinearity");
}

}  // namespace

TtVector nonlinear_apply(const ProblemSpec& p, const TtVector& U, const GridSpec& g, double eps, int chi) {
  TtOperator dx_st;
  if (nonlinearity_has_derivative_factor(p.kind))
    dx_st = tt_kron(qtt_identity(g.q_t), advection_derivative(p, g));
  return apply_kind(p, U, dx_st, eps, chi);
}

TtVector nonlinear_apply_spatial(const ProblemSpec& p, const TtVector& u, const GridSpec& g, double eps,
                                 int chi) {
  TtOperator dx_op;
  if (nonlinearity_has_derivative_factor(p.kind)) dx_op = advection_derivative(p, g);
  return apply_kind(p, u, dx_op, eps, chi);
}

TtVector nonlinear_jacobian_diag(const ProblemSpec& p, const TtVector& U, double eps, int chi) {
  switch (p.kind) {
    case NonlinearityKind::quadratic_reaction: return tt_scale(U, 2.0 * p.nonlin_coef);
    case NonlinearityKind::conservative_advection: return U;
    case NonlinearityKind::sine:
      return tt_apply_elementwise([](double v) { return std::cos(v); }, U, eps, chi);
  }
  throw std::logic_error("unknown nonlinearity");
}

}  // namespace ttst
