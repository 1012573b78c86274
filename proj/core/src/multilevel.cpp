#include "ttst/multilevel.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ttst {

namespace {

std::int64_t bitrev(std::int64_t x, int q) {
  std::int64_t out = 0;
  for (int k = 0; k < q; ++k) out |= ((x >> k) & 1) << (q - 1 - k);
  return out;
}

TtVector with_unit_core(const TtVector& x, int pos) {
  TtVector out = x;
  const int r = pos == 0 ? 1 : out.cores[pos - 1].r1;
  TtCore3 unit(r, 1, r);
  for (int a = 0; a < r; ++a) unit.at(a, 0, a) = 1.0;
  out.cores.insert(out.cores.begin() + pos, std::move(unit));
  return out;
}

}  // namespace

TtOperator prolong_1d(int q_coarse, Centering centering) {
  if (q_coarse < 2 || q_coarse > 12) throw std::invalid_argument("prolong_1d: exponent out of range");
  const std::int64_t n = std::int64_t{1} << q_coarse;
  Matrix dense = Matrix::Zero(2 * n, n);
  for (std::int64_t j = 0; j < n; ++j) {
    if (centering == Centering::cell) {
      dense(2 * j, std::max<std::int64_t>(j - 1, 0)) += 0.25;
      dense(2 * j, j) += 0.75;
      dense(2 * j + 1, j) += 0.75;
      dense(2 * j + 1, std::min(j + 1, n - 1)) += 0.25;
    } else {
      dense(2 * j + 1, j) = 1.0;
      dense(2 * j, std::max<std::int64_t>(j - 1, 0)) += 0.5;
      dense(2 * j, j) += 0.5;
    }
  }
  // little-endian digit order on both axes; the q_coarse+1'th column digit is trivial
  Matrix perm(2 * n, n);
  for (std::int64_t r = 0; r < 2 * n; ++r)
    for (std::int64_t c = 0; c < n; ++c) perm(r, c) = dense(bitrev(r, q_coarse + 1), bitrev(c, q_coarse));
  std::vector<int> row_modes(q_coarse + 1, 2);
  std::vector<int> col_modes(q_coarse, 2);
  col_modes.push_back(1);
  return tt_op_from_dense(perm, row_modes, col_modes, 1e-13);
}

TtVector prolong_1d_apply(const TtOperator& p, const TtVector& x_coarse) {
  return tt_matvec(p, with_unit_core(x_coarse, x_coarse.order()));
}

TtOperator prolong_spacetime(int q_t_coarse, int q_x_coarse) {
  return tt_kron(prolong_1d(q_t_coarse, Centering::node), prolong_1d(q_x_coarse, Centering::cell));
}

TtVector prolong_field(const TtVector& u_coarse, int q_t_coarse, int q_x_coarse, double eps, int chi) {
  if (u_coarse.order() != q_t_coarse + q_x_coarse)
    throw std::invalid_argument("prolong_field: core count does not match the grid exponents");
  TtVector padded = with_unit_core(with_unit_core(u_coarse, q_t_coarse), q_t_coarse + q_x_coarse + 1);
  return tt_round(tt_matvec(prolong_spacetime(q_t_coarse, q_x_coarse), padded), eps, chi);
}

TtVector coarse_initial_guess(const TtVector& u0_space, int q_t) {
  return tt_kron(qtt_ones(q_t), u0_space);
}

GridSpec LevelPlan::grid(const GridSpec& finest, int level) const {
  return {finest.q_x - level, finest.q_t - level, finest.x_a, finest.x_b, finest.T};
}

void LevelPlan::check_valid(const GridSpec& finest) const {
  if (n_levels < 1) throw std::invalid_argument("LevelPlan: need at least one level");
  if (finest.q_x - (n_levels - 1) < 2 || finest.q_t - (n_levels - 1) < 2)
    throw std::invalid_argument("LevelPlan: coarsest level below 2^2");
  if (!overrides.empty() && static_cast<int>(overrides.size()) != n_levels)
    throw std::invalid_argument("LevelPlan: overrides must cover every level");
}

MultilevelResult multilevel_solve(const ProblemSpec& p, const GridSpec& finest, SchemeId scheme,
                                  const LevelPlan& plan, const NewtonConfig& cfg,
                                  const CompressionPolicy& policy) {
  plan.check_valid(finest);
  MultilevelResult out;
  TtVector prev;
  for (int l = plan.n_levels - 1; l >= 0; --l) {
    const GridSpec g = plan.grid(finest, l);
    const NewtonConfig& lcfg = plan.overrides.empty() ? cfg : plan.overrides[l];
    const double eps_a =
        policy.eps_tt_base > 0.0 ? compression_eps(policy, g) : lcfg.eps_tt_floor;
    const AssembledSystem sys = assemble(p, g, scheme, eps_a);

    TtVector naive = coarse_initial_guess(initial_condition_tt(p, g, eps_a), g.q_t);
    const bool coarsest = l == plan.n_levels - 1;
    TtVector guess =
        coarsest ? naive : prolong_field(prev, g.q_t - 1, g.q_x - 1, eps_a, lcfg.chi);

    LevelTrace tr;
    tr.grid = g;
    const double eps_f = policy.sigma_factor * lcfg.eps_res;
    tr.naive_residual = tt_norm(sys.residual(naive, eps_f, lcfg.chi));
    tr.guess_residual = coarsest ? tr.naive_residual : tt_norm(sys.residual(guess, eps_f, lcfg.chi));

    NewtonResult res = newton_solve(sys, guess, lcfg, policy);
    if (res.trace.aborted)
      throw std::runtime_error("multilevel_solve: level " + std::to_string(l) +
                               " aborted: " + res.trace.abort_reason);
    tr.trace = std::move(res.trace);
    tr.converged = res.converged;
    out.levels.push_back(std::move(tr));
    prev = std::move(res.u);
  }
  out.converged = out.levels.back().converged;
  out.u = std::move(prev);
  return out;
}

}  // namespace ttst
