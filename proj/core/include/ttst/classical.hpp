#pragma once

#include "ttst/dense_reference.hpp"

namespace ttst {

/// Sequential time-stepping comparator: one dense Newton solve per time level.
struct CtConfig {
  double eps_res = 1e-10;  // per-step residual target, relative to the step data
  int n_iter = 30;
  double s = 0.5;  // line-search shrink
  int n_line = 10;

  void check_valid() const;
};

struct CtResult {
  Matrix u;  // N_t x N_x, row n-1 holds the solution at t_n
  std::vector<int> step_iterations;
  int total_iterations() const;
  int max_step_iterations() const;
};

/// March t_1 .. t_{N_t}; each step solves the scheme's one-step nonlinear
/// equation by damped Newton with a direct dense solve, starting from the
/// previous level. Second-order schemes seed the pre-initial level from the
/// Taylor expansion of the initial data. Throws on per-step divergence with
/// the step index. Guard: N_x <= 2^13.
CtResult ct_solve(const ProblemSpec& p, const GridSpec& g, SchemeId scheme, const CtConfig& cfg = {});

}  // namespace ttst
