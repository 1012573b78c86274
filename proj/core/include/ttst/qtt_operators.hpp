#pragma once

#include <array>
#include <cstdint>

#include "ttst/tt.hpp"

namespace ttst {

enum class BcKind { dirichlet, neumann, none, periodic };

/// Boundary condition at one domain end. The ghost-cell elimination coefficients
/// are a (operator modification) and b (inhomogeneous source):
///   dirichlet: a = -1, b = 2*value;  neumann: a = +1, b = value*dn;  none: a = b = 0.
struct BoundaryCondition {
  BcKind kind = BcKind::none;
  double value = 0.0;

  static BoundaryCondition dirichlet(double u_b) { return {BcKind::dirichlet, u_b}; }
  static BoundaryCondition neumann(double dudn) { return {BcKind::neumann, dudn}; }
  static BoundaryCondition none() { return {BcKind::none, 0.0}; }
  static BoundaryCondition periodic() { return {BcKind::periodic, 0.0}; }

  double a() const;
  double b(double dn) const;
};

/// Uniform space-time grid: N_x = 2^q_x cells on [x_a, x_b], N_t = 2^q_t intervals on (0, T].
/// Cell centers x_i = x_a + (i - 1/2) dx, time nodes t_n = n dt (1-based).
struct GridSpec {
  int q_x = 2, q_t = 2;
  double x_a = 0.0, x_b = 1.0, T = 1.0;

  std::int64_t nx() const { return std::int64_t{1} << q_x; }
  std::int64_t nt() const { return std::int64_t{1} << q_t; }
  double dx() const { return (x_b - x_a) / static_cast<double>(nx()); }
  double dt() const { return T / static_cast<double>(nt()); }
  double x_center(std::int64_t i) const { return x_a + (static_cast<double>(i) - 0.5) * dx(); }
  double t_node(std::int64_t n) const { return static_cast<double>(n) * dt(); }
  void check_valid() const;
};

// ---- explicit QTT chains for banded 2^n x 2^n matrices ----------------------------

/// Tridiagonal Toeplitz with sub/diag/super stencil (l, d, u); the corner diagonal
/// entries become a1*l + d and a2*u + d. Internal ranks <= 5.
TtOperator qtt_toeplitz3(int n, double l, double d, double u, double a1, double a2);

/// Circulant tridiagonal: wrap entries l at top-right, u at bottom-left. Ranks <= 3.
TtOperator qtt_circulant3(int n, double l, double d, double u);

/// Pentadiagonal Toeplitz with stencil (l2, l1, d, u1, u2) and corner modifications
/// c1 = (a11, a12, a13) added to entries (1,1), (1,2), (2,1) and
/// c2 = (a21, a22, a23) added to (N,N), (N,N-1), (N-1,N). Ranks <= 5.
TtOperator qtt_penta5(int n, double l2, double l1, double d, double u1, double u2,
                      std::array<double, 3> c1 = {0, 0, 0}, std::array<double, 3> c2 = {0, 0, 0});

/// Circulant pentadiagonal. Ranks <= 3.
TtOperator qtt_circulant5(int n, double l2, double l1, double d, double u1, double u2);

TtOperator qtt_identity(int n);
TtVector qtt_ones(int n);
/// Unit vector with a 1 at 1-based position k.
TtVector qtt_basis(int n, std::int64_t k);

// ---- discrete PDE operators -------------------------------------------------------

enum class TimeOp { d_t, j_t, k_t, d_tt };
enum class SpaceOp { d_x, d_xx, d_xxx };

/// Time-difference operators on 2^q_t nodes:
///   d_t: backward difference; j_t: trapezoidal average (1,1)/2;
///   k_t: (1,2,1)/4 lower-tridiagonal weight; d_tt: second backward difference.
TtOperator build_time_operator(TimeOp name, int q_t);

/// Spatial operators on 2^q_x cells, scaled by 1/(2dx), 1/dx^2, or 1/(2dx^3).
/// d_xxx is always circulant; d_x/d_xx honor the boundary-condition a coefficients
/// (both ends periodic switches to the circulant form).
TtOperator build_space_operator(SpaceOp name, int q_x, double dx, const BoundaryCondition& left,
                                const BoundaryCondition& right);

/// Additive ghost-cell source g such that the continuous operator action is
/// approximated by build_space_operator(...)*u + g. Supported on the first and
/// last cells; zero for homogeneous conditions and for d_xxx.
TtVector boundary_source(const BoundaryCondition& left, const BoundaryCondition& right, int q_x, double dx,
                         SpaceOp op);

}  // namespace ttst
