#pragma once

#include "ttst/problems.hpp"
#include "ttst/schemes.hpp"

namespace ttst {

/// Fully dense spatial discretization of one problem; the brute-force counterpart
/// of the QTT assembly, built directly from stencils and ghost-cell elimination.
struct DenseProblem {
  ProblemSpec p;
  GridSpec g;
  Matrix L;    // matrix part of the discrete linear operator
  Vector Lc;   // constant part from inhomogeneous boundaries
  Matrix Dx;   // central first derivative (conservative advection factor)
  Vector u0;
  Vector ut0;  // m = 2 only, else empty

  Vector nonlinear(const Vector& u) const;
  Matrix nonlinear_jacobian(const Vector& u) const;
  Vector source_at(double t) const;  // zero when the problem has no source
  /// Full linear action L u + Lc.
  Vector linear(const Vector& u) const { return L * u + Lc; }
};

DenseProblem make_dense_problem(const ProblemSpec& p, const GridSpec& g);

/// Monolithic dense space-time system for one scheme, built row-wise from the
/// per-step update formulas.
struct DenseSystem {
  DenseProblem dp;
  SchemeId scheme;
  Vector umin1;  // m = 2: Taylor-extrapolated level before t = 0

  std::int64_t size() const { return dp.g.nt() * dp.g.nx(); }
  Vector constant() const;  // the monolithic right-hand-side constant C
  Vector residual(const Vector& U) const;
  Matrix jacobian(const Vector& U) const;
};

DenseSystem make_dense_system(const ProblemSpec& p, const GridSpec& g, SchemeId scheme);

/// Taylor start-up level U^(-1) = u0 - dt ut0 + dt^2/2 utt0 (- dt^3/6 uttt0 for
/// Newmark), with utt0 from the PDE.
Vector dense_u_minus_one(const DenseProblem& dp, SchemeId scheme);

struct DenseNewtonResult {
  Vector U;
  int iterations = 0;
  bool converged = false;
  std::vector<double> residual_history;
};

/// Damped Newton with backtracking line search on the monolithic dense system.
DenseNewtonResult dense_newton(const DenseSystem& sys, const Vector& U_init, double eps_res,
                               int max_iter = 30, double shrink = 0.5, int n_line = 10);

}  // namespace ttst
