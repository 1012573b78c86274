#pragma once

#include "ttst/problems.hpp"
#include "ttst/schemes.hpp"

namespace ttst {

/// Monolithic space-time system f(U) = A(U) + B U - C = 0 in TT form.
/// Layout: time cores first, then space cores; the flat index is
/// (n - 1) + N_t * (i - 1) for time level n and cell i (both 1-based).
struct AssembledSystem {
  ProblemSpec problem;
  GridSpec grid;
  SchemeId scheme;
  double eps_tt = 1e-10;

  TtOperator B;            // linear space-time operator
  TtVector C;              // aggregated initial/boundary/source constant
  TtOperator time_weight;  // scheme weight W on the time grid (I_t, J_t or K_t)
  double dt_power = 0.0;   // dt or dt^2

  TtVector apply_nonlinear(const TtVector& U, double eps, int chi = kNoRankCap) const;
  TtVector residual(const TtVector& U, double eps_f, int chi = kNoRankCap) const;
  TtOperator jacobian(const TtVector& U, double eps_j, int chi = kNoRankCap) const;
};

AssembledSystem assemble(const ProblemSpec& p, const GridSpec& g, SchemeId scheme, double eps_tt);

/// Taylor start-up level before t = 0 for second-order problems; the third-order
/// term is included only for the Newmark scheme.
TtVector u_minus_one(const ProblemSpec& p, const GridSpec& g, SchemeId scheme, double eps);

/// Sample f(x_i, t_n) over the whole space-time grid into TT form (dense sampling,
/// so limited to small grids; used for sources and manufactured solutions).
TtVector spacetime_function_tt(const std::function<double(double, double)>& f, const GridSpec& g,
                               double eps);

}  // namespace ttst
