#pragma once

#include "ttst/newton.hpp"

namespace ttst {

enum class Centering { cell, node };

/// 1D linear-interpolation prolongation from 2^q to 2^{q+1} points, as a QTT
/// operator with q+1 cores (column modes 2,...,2,1). Cell centering blends
/// neighboring coarse cells with weights (3/4, 1/4); node centering injects
/// coincident nodes and averages midpoints. Boundary rows clamp the missing
/// neighbor to the nearest coarse value.
TtOperator prolong_1d(int q_coarse, Centering centering);

/// Apply a 1D prolongation operator to a 2^q coarse vector (pads the missing
/// trailing mode). Exact, no rounding.
TtVector prolong_1d_apply(const TtOperator& p, const TtVector& x_coarse);

/// Space-time prolongation P_t kron P_x between adjacent levels: node-centered
/// in time, cell-centered in space. Time cores first, matching the layout of
/// assembled space-time fields.
TtOperator prolong_spacetime(int q_t_coarse, int q_x_coarse);

/// Prolongate a coarse space-time field (q_t + q_x cores, time cores first) to
/// the next finer grid and round the result at (eps, chi).
TtVector prolong_field(const TtVector& u_coarse, int q_t_coarse, int q_x_coarse, double eps,
                       int chi = kNoRankCap);

/// Ones-in-time initial guess 1_{n_t} kron U0; all time bonds have rank 1.
TtVector coarse_initial_guess(const TtVector& u0_space, int q_t);

/// Hierarchy of grids with refinement ratio two in both axes; level l has
/// exponents (q_x - l, q_t - l), level 0 being the finest.
struct LevelPlan {
  int n_levels = 1;
  std::vector<NewtonConfig> overrides;  // per level, index = level; empty uses the base config

  GridSpec grid(const GridSpec& finest, int level) const;
  void check_valid(const GridSpec& finest) const;
};

struct LevelTrace {
  GridSpec grid;
  NewtonTrace trace;
  bool converged = false;
  double guess_residual = 0.0;  // ||f|| at the level's actual initial guess
  double naive_residual = 0.0;  // ||f|| at the ones-in-time guess, for comparison
};

struct MultilevelResult {
  TtVector u;                      // finest-level solution
  std::vector<LevelTrace> levels;  // ordered coarse to fine
  bool converged = false;          // finest level converged
  int finest_iterations() const {
    return levels.empty() ? 0 : static_cast<int>(levels.back().trace.iters.size());
  }
};

/// Coarse-to-fine continuation: solve on the coarsest grid from the
/// ones-in-time guess, then repeatedly prolongate the converged solution one
/// level down as the next initial guess. No residual restriction or cycling;
/// each level is solved independently to its own convergence test. A Newton
/// abort on any level throws with the level index.
MultilevelResult multilevel_solve(const ProblemSpec& p, const GridSpec& finest, SchemeId scheme,
                                  const LevelPlan& plan, const NewtonConfig& cfg,
                                  const CompressionPolicy& policy = {});

}  // namespace ttst
