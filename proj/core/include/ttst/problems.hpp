#pragma once

#include <functional>
#include <optional>
#include <string>

#include "ttst/cross.hpp"
#include "ttst/qtt_operators.hpp"

namespace ttst {

enum class NonlinearityKind { quadratic_reaction, conservative_advection, sine };

/// One benchmark PDE: du^m/dt^m + L u + N(u) = 0 with L a sum of scaled spatial
/// operators plus a reaction constant, and N one of the supported nonlinearities.
struct ProblemSpec {
  std::string name;
  int m = 1;
  double x_a = 0, x_b = 1, T = 1;
  BoundaryCondition bc_left, bc_right;

  struct LinTerm {
    SpaceOp op;
    double coef;
  };
  std::vector<LinTerm> linear_terms;
  double reaction_coef = 0.0;  // contributes reaction_coef * I to L

  NonlinearityKind kind = NonlinearityKind::quadratic_reaction;
  double nonlin_coef = 1.0;  // r for the quadratic reaction, 1 otherwise

  std::function<double(double)> u0;
  std::function<double(double)> ut0;                   // m = 2 only
  std::function<double(double, double)> analytic;      // may be empty
  std::function<double(double, double)> source;        // s(x,t); empty means zero

  // named coefficients kept for reference and reporting
  double D = 0, r = 0, nu = 0, c = 0, x0 = 0, amp = 1;
};

struct ProblemOverrides {
  std::optional<double> c, x0, nu, a, D, r, amp;
};

/// Benchmark catalogue: fisher_kpp, burgers_parabolic, burgers_shock,
/// sine_gordon_kink, kdv_soliton.
ProblemSpec make_problem(const std::string& name, const ProblemOverrides& o = {});

/// Closed-form reference solution; throws when the problem has none.
double analytic_solution(const ProblemSpec& p, double x, double t);

/// Matrix part of the discrete L (ghost-cell a coefficients folded in).
TtOperator linear_operator(const ProblemSpec& p, const GridSpec& g);

/// Constant part of the discrete L action from inhomogeneous boundaries:
/// L u ~ linear_operator * u + linear_constant.
TtVector linear_constant(const ProblemSpec& p, const GridSpec& g);

TtVector initial_condition_tt(const ProblemSpec& p, const GridSpec& g, double eps);
TtVector initial_velocity_tt(const ProblemSpec& p, const GridSpec& g, double eps);

/// N applied to a space-time field (time cores first). For the conservative
/// advection the derivative factor I_t (x) D_x is applied here.
TtVector nonlinear_apply(const ProblemSpec& p, const TtVector& U, const GridSpec& g, double eps,
                         int chi = kNoRankCap);

/// N applied to a single spatial field.
TtVector nonlinear_apply_spatial(const ProblemSpec& p, const TtVector& u, const GridSpec& g, double eps,
                                 int chi = kNoRankCap);

/// Pointwise factor h(U) of the exact Jacobian N'(U) = [operator factor] * diag(h(U)):
/// 2rU for the quadratic reaction, U for conservative advection, cos U for sine.
TtVector nonlinear_jacobian_diag(const ProblemSpec& p, const TtVector& U, double eps,
                                 int chi = kNoRankCap);

/// True when N'(U) carries the I_t (x) D_x factor in front of the diagonal.
bool nonlinearity_has_derivative_factor(NonlinearityKind kind);

/// The D_x operator used inside the conservative advection, on this problem's grid.
TtOperator advection_derivative(const ProblemSpec& p, const GridSpec& g);

}  // namespace ttst
