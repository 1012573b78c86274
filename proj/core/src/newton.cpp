#include "ttst/newton.hpp"

#include <algorithm>
#include <cmath>

namespace ttst {

double compression_eps(const CompressionPolicy& policy, const GridSpec& g) {
  if (policy.eps_tt_base <= 0.0) return 0.0;
  const double cx = std::pow(g.dx() / policy.dx0, policy.order_x);
  const double ct = std::pow(g.dt() / policy.dt0, policy.order_t);
  return policy.eps_tt_base * std::min(cx, ct);
}

NewtonResult newton_solve(const AssembledSystem& sys, const TtVector& u0, const NewtonConfig& cfg,
                          const CompressionPolicy& policy) {
  NewtonResult out;
  out.u = tt_round(u0, 1e-15, cfg.chi);

  const double eps_floor = policy.eps_tt_base > 0.0 ? compression_eps(policy, sys.grid) : cfg.eps_tt_floor;
  const double eps_f = policy.sigma_factor * cfg.eps_res;
  double eps_tt_k = std::max(cfg.eps_tt_init, eps_floor);

  const double c_norm_raw = tt_norm(sys.C);
  const double c_norm = c_norm_raw > 0.0 ? c_norm_raw : 1.0;

  try {
    TtVector f = sys.residual(out.u, eps_f, cfg.chi);
    double fn = tt_norm(f);
    out.trace.initial_residual = fn;

    for (int it = 0; it < cfg.n_iter; ++it) {
      if (!std::isfinite(fn)) throw std::runtime_error("non-finite residual");
      if (fn / c_norm < cfg.eps_res) {
        out.converged = true;
        break;
      }

      TtOperator j = sys.jacobian(out.u, eps_tt_k);
      NewtonIterRecord rec;
      rec.eps_tt_k = eps_tt_k;

      TtVector step;  // U' with U_{k+1} = U_k + omega * U'
      if (cfg.variant == NewtonVariant::correction) {
        auto sol = dmrg_solve(j, tt_scale(f, -1.0), cfg.dmrg);
        step = tt_round(sol.x, eps_tt_k, cfg.chi);
        rec.dmrg_residual = sol.achieved_residual;
        rec.dmrg_sweeps = sol.sweeps_used;
      } else {
        // R = A'(U) U - A(U) + C = J U - f
        TtVector r = tt_round(tt_add(tt_matvec(j, out.u), tt_scale(f, -1.0)), eps_f);
        auto sol = dmrg_solve(j, r, out.u, cfg.dmrg);
        step = tt_round(tt_add(tt_round(sol.x, eps_tt_k, cfg.chi), tt_scale(out.u, -1.0)), eps_tt_k);
        rec.dmrg_residual = sol.achieved_residual;
        rec.dmrg_sweeps = sol.sweeps_used;
      }
      const double cor_norm = tt_norm(step);

      double omega = 1.0;
      TtVector u_new = tt_round(tt_add(out.u, step), eps_tt_k, cfg.chi);
      TtVector f_new = sys.residual(u_new, eps_f, cfg.chi);
      double fn_new = tt_norm(f_new);
      for (int trial = 1; trial < cfg.n_line && fn_new >= fn; ++trial) {
        omega *= cfg.s;
        u_new = tt_round(tt_add(out.u, tt_scale(step, omega)), eps_tt_k, cfg.chi);
        f_new = sys.residual(u_new, eps_f, cfg.chi);
        fn_new = tt_norm(f_new);
      }

      rec.omega = omega;
      rec.residual_norm = fn_new;
      rec.max_rank = u_new.max_rank();
      out.trace.iters.push_back(rec);

      if (fn_new >= cfg.beta * fn) eps_tt_k = std::max(0.8 * eps_tt_k, eps_floor);
      out.u = std::move(u_new);
      f = std::move(f_new);
      fn = fn_new;

      if (fn / c_norm < cfg.eps_res) {
        out.converged = true;
        break;
      }
      const double un = tt_norm(out.u);
      if (cfg.eps_cor > 0.0 && un > 0.0 && cor_norm / un < cfg.eps_cor) {
        out.converged = true;
        break;
      }
    }
  } catch (const std::exception& e) {
    out.trace.aborted = true;
    out.trace.abort_reason = e.what();
    out.converged = false;
  }
  return out;
}

}  // namespace ttst
