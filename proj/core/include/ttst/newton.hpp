#pragma once

#include "ttst/discretization.hpp"
#include "ttst/dmrg.hpp"

namespace ttst {

enum class NewtonVariant { correction, rhs_reformulated };

struct NewtonConfig {
  NewtonVariant variant = NewtonVariant::rhs_reformulated;
  int n_iter = 20;
  double eps_res = 1e-5;       // relative residual target ||f|| / ||C||
  double eps_cor = 0.0;        // relative correction-norm target (0 disables)
  double s = 0.5;              // line-search shrink factor
  int n_line = 10;             // max line-search trials
  double beta = 0.9;           // residual-stagnation ratio triggering tightening
  double eps_tt_init = 1e-3;   // starting adaptive compression tolerance
  double eps_tt_floor = 1e-6;  // final TT compression tolerance
  int chi = kNoRankCap;        // solution rank cap
  DmrgConfig dmrg;
};

/// Grid-dependent compression schedule: eps_tt = eps_tt_base *
/// min((dx/dx0)^order_x, (dt/dt0)^order_t). eps_tt_base <= 0 disables the
/// schedule and the solver falls back to NewtonConfig::eps_tt_floor.
struct CompressionPolicy {
  double eps_tt_base = 0.0;
  double dx0 = 1.0, dt0 = 1.0;
  int order_x = 2, order_t = 1;
  double sigma_factor = 0.25;  // residual compression: eps_f = sigma_factor * eps_res
};

double compression_eps(const CompressionPolicy& policy, const GridSpec& g);

struct NewtonIterRecord {
  double residual_norm = 0.0;  // ||f(U_{k+1})||, absolute
  double omega = 1.0;
  double eps_tt_k = 0.0;
  int max_rank = 0;
  double dmrg_residual = 0.0;
  int dmrg_sweeps = 0;
};

struct NewtonTrace {
  double initial_residual = 0.0;
  std::vector<NewtonIterRecord> iters;
  bool aborted = false;
  std::string abort_reason;
};

struct NewtonResult {
  TtVector u;
  NewtonTrace trace;
  bool converged = false;
  int iterations() const { return static_cast<int>(trace.iters.size()); }
};

NewtonResult newton_solve(const AssembledSystem& sys, const TtVector& u0, const NewtonConfig& cfg,
                          const CompressionPolicy& policy = {});

}  // namespace ttst
