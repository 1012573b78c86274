#include "ttst/discretization.hpp"

#include <cmath>
#include <stdexcept>

namespace ttst {
namespace {

TtVector sample_source(const ProblemSpec& p, const GridSpec& g, double t, double eps) {
  std::vector<double> v(g.nx());
  for (std::int64_t i = 1; i <= g.nx(); ++i) v[i - 1] = p.source(g.x_center(i), t);
  return qtt_from_vector(v, eps);
}

/// F(u, t) = L u + L_const + N(u) - s(t) for a spatial field u.
TtVector spatial_rhs(const ProblemSpec& p, const GridSpec& g, const TtOperator& lop, const TtVector& lconst,
                     const TtVector& u, double t, double eps) {
  TtVector f = tt_add(tt_matvec(lop, u), lconst);
  f = tt_add(f, nonlinear_apply_spatial(p, u, g, eps));
  if (p.source) f = tt_add(f, tt_scale(sample_source(p, g, t, eps), -1.0));
  return tt_round(f, eps);
}

TimeOp scheme_time_matrix(SchemeId s) {
  return scheme_temporal_order(s) == 1 ? TimeOp::d_t : TimeOp::d_tt;
}

TimeOp scheme_time_weight(SchemeId s) {
  switch (s) {
    case SchemeId::euler_m1:
    case SchemeId::euler_m2: return TimeOp::d_t;  // placeholder, replaced by identity below
    case SchemeId::crank_nicolson_m1: return TimeOp::j_t;
    case SchemeId::newmark_m2: return TimeOp::k_t;
  }
  throw std::logic_error("unknown scheme");
}

}  // namespace

TtVector spacetime_function_tt(const std::function<double(double, double)>& f, const GridSpec& g,
                               double eps) {
  const std::int64_t total = g.nt() * g.nx();
  if (total > (std::int64_t{1} << 20)) throw std::invalid_argument("space-time grid too large to sample densely");
  std::vector<double> v(total);
  for (std::int64_t i = 1; i <= g.nx(); ++i)
    for (std::int64_t n = 1; n <= g.nt(); ++n) v[(n - 1) + g.nt() * (i - 1)] = f(g.x_center(i), g.t_node(n));
  return qtt_from_vector(v, eps);
}

TtVector u_minus_one(const ProblemSpec& p, const GridSpec& g, SchemeId scheme, double eps) {
  if (p.m != 2) throw std::logic_error("start-up level only defined for second-order problems");
  const double dt = g.dt();
  TtOperator lop = linear_operator(p, g);
  TtVector lconst = linear_constant(p, g);
  TtVector u0 = initial_condition_tt(p, g, eps);
  TtVector ut0 = initial_velocity_tt(p, g, eps);

  // u_tt(0) from the PDE: u_tt = s - L u - N(u)
  TtVector utt0 = tt_scale(spatial_rhs(p, g, lop, lconst, u0, 0.0, eps), -1.0);
  TtVector um1 = tt_add(u0, tt_scale(ut0, -dt));
  um1 = tt_add(um1, tt_scale(utt0, 0.5 * dt * dt));
  if (scheme == SchemeId::newmark_m2) {
    // u_ttt(0) = -L u_t - N'(u0) u_t (source held constant in time)
    TtVector jdiag = nonlinear_jacobian_diag(p, u0, eps);
    TtVector nprime = tt_round(tt_hadamard(jdiag, ut0), eps);
    if (nonlinearity_has_derivative_factor(p.kind)) nprime = tt_matvec(advection_derivative(p, g), nprime);
    TtVector uttt0 = tt_scale(tt_add(tt_matvec(lop, ut0), nprime), -1.0);
    um1 = tt_add(um1, tt_scale(uttt0, -dt * dt * dt / 6.0));
  }
  return tt_round(um1, eps);
}

AssembledSystem assemble(const ProblemSpec& p, const GridSpec& g, SchemeId scheme, double eps_tt) {
  if (scheme_temporal_order(scheme) != p.m)
    throw std::invalid_argument("scheme temporal order does not match the problem");

  AssembledSystem sys;
  sys.problem = p;
  sys.grid = g;
  sys.scheme = scheme;
  sys.eps_tt = eps_tt;
  const double dt = g.dt();
  sys.dt_power = p.m == 1 ? dt : dt * dt;

  const bool euler = scheme == SchemeId::euler_m1 || scheme == SchemeId::euler_m2;
  sys.time_weight = euler ? qtt_identity(g.q_t) : build_time_operator(scheme_time_weight(scheme), g.q_t);

  TtOperator lop = linear_operator(p, g);
  TtVector lconst = linear_constant(p, g);
  TtOperator t_mat = build_time_operator(scheme_time_matrix(scheme), g.q_t);

  sys.B = tt_op_add(tt_kron(t_mat, qtt_identity(g.q_x)),
                    tt_op_scale(tt_kron(sys.time_weight, lop), sys.dt_power));
  sys.B = tt_op_round(sys.B, eps_tt);

  // C aggregates initial data, lifted boundary sources and the PDE source
  TtVector u0 = initial_condition_tt(p, g, eps_tt);
  TtVector e1 = qtt_basis(g.q_t, 1);
  TtVector C;
  switch (scheme) {
    case SchemeId::euler_m1: C = tt_kron(e1, u0); break;
    case SchemeId::crank_nicolson_m1: {
      TtVector f0 = spatial_rhs(p, g, lop, lconst, u0, 0.0, eps_tt);
      C = tt_kron(e1, tt_round(tt_add(u0, tt_scale(f0, -0.5 * dt)), eps_tt));
      break;
    }
    case SchemeId::euler_m2: {
      TtVector um1 = u_minus_one(p, g, scheme, eps_tt);
      TtVector c1 = tt_round(tt_add(tt_scale(u0, 2.0), tt_scale(um1, -1.0)), eps_tt);
      C = tt_add(tt_kron(e1, c1), tt_kron(qtt_basis(g.q_t, 2), tt_scale(u0, -1.0)));
      break;
    }
    case SchemeId::newmark_m2: {
      TtVector um1 = u_minus_one(p, g, scheme, eps_tt);
      TtVector f0 = spatial_rhs(p, g, lop, lconst, u0, 0.0, eps_tt);
      TtVector fm1 = spatial_rhs(p, g, lop, lconst, um1, -dt, eps_tt);
      TtVector c1 = tt_add(tt_scale(u0, 2.0), tt_scale(um1, -1.0));
      c1 = tt_add(c1, tt_scale(tt_add(tt_scale(f0, 2.0), fm1), -0.25 * dt * dt));
      TtVector c2 = tt_add(tt_scale(u0, -1.0), tt_scale(f0, -0.25 * dt * dt));
      C = tt_add(tt_kron(e1, tt_round(c1, eps_tt)), tt_kron(qtt_basis(g.q_t, 2), tt_round(c2, eps_tt)));
      break;
    }
  }

  // boundary lift: every time row carries its scheme weight times L_const
  if (tt_norm(lconst) > 0) {
    TtVector w_ones = tt_matvec(sys.time_weight, qtt_ones(g.q_t));
    C = tt_add(C, tt_scale(tt_kron(w_ones, lconst), -sys.dt_power));
  }
  if (p.source) {
    TtVector s = spacetime_function_tt(p.source, g, eps_tt);
    TtOperator wi = tt_kron(sys.time_weight, qtt_identity(g.q_x));
    C = tt_add(C, tt_scale(tt_matvec(wi, s), sys.dt_power));
  }
  sys.C = tt_round(C, eps_tt);
  return sys;
}

TtVector AssembledSystem::apply_nonlinear(const TtVector& U, double eps, int chi) const {
  TtVector n = nonlinear_apply(problem, U, grid, eps, chi);
  TtOperator wi = tt_kron(time_weight, qtt_identity(grid.q_x));
  return tt_round(tt_scale(tt_matvec(wi, n), dt_power), eps, chi);
}

TtVector AssembledSystem::residual(const TtVector& U, double eps_f, int chi) const {
  TtVector f = tt_add(apply_nonlinear(U, eps_f, chi), tt_matvec(B, U));
  f = tt_add(f, tt_scale(C, -1.0));
  return tt_round(f, eps_f, chi);
}

TtOperator AssembledSystem::jacobian(const TtVector& U, double eps_j, int chi) const {
  TtVector h = nonlinear_jacobian_diag(problem, U, eps_j, chi);
  TtOperator hd = tt_diag(h);
  if (nonlinearity_has_derivative_factor(problem.kind))
    hd = tt_matmat(tt_kron(qtt_identity(grid.q_t), advection_derivative(problem, grid)), hd);
  TtOperator wi = tt_kron(time_weight, qtt_identity(grid.q_x));
  TtOperator j = tt_op_add(B, tt_op_scale(tt_matmat(wi, hd), dt_power));
  return tt_op_round(j, eps_j, chi);
}

}  // namespace ttst
