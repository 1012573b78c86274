#pragma once

#include <functional>

#include "ttst/tt.hpp"

namespace ttst {

/// Two-site rank-adaptive DMRG for TT linear systems J x = b with
/// Tikhonov-regularized dense local solves.
struct DmrgConfig {
  double eps_dmrg = 1e-3;     // relative residual target
  int n_sweeps = 3;           // max full left-right sweeps
  int chi = 64;               // bond dimension cap of the iterate
  double alpha = 1e-12;       // Tikhonov parameter for the local solves
  double local_trunc = 1e-10; // relative SVD tolerance when re-splitting a pair

  /// Called with each projected local system before it is solved; the TtVector is
  /// the current iterate. Used by verification tests, ignored when empty.
  std::function<void(int k, const TtVector& x, const Matrix& a_loc, const Vector& b_loc)> observe_local;
};

struct DmrgResult {
  TtVector x;
  double achieved_residual = 0.0;  // honest ||J x - b|| / ||b||
  int sweeps_used = 0;
};

/// Solve J x = b. x0 empty means start from b rounded to the rank cap.
DmrgResult dmrg_solve(const TtOperator& j, const TtVector& b, const TtVector& x0, const DmrgConfig& cfg);
DmrgResult dmrg_solve(const TtOperator& j, const TtVector& b, const DmrgConfig& cfg);

}  // namespace ttst
