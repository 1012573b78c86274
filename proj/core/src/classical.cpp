#include "ttst/classical.hpp"

#include <stdexcept>
#include <string>

namespace ttst {

void CtConfig::check_valid() const {
  if (eps_res <= 0.0 || n_iter < 1 || s <= 0.0 || s >= 1.0 || n_line < 1)
    throw std::invalid_argument("CtConfig: bad parameters");
}

int CtResult::total_iterations() const {
  int s = 0;
  for (int k : step_iterations) s += k;
  return s;
}

int CtResult::max_step_iterations() const {
  int m = 0;
  for (int k : step_iterations) m = std::max(m, k);
  return m;
}

CtResult ct_solve(const ProblemSpec& p, const GridSpec& g, SchemeId scheme, const CtConfig& cfg) {
  cfg.check_valid();
  if (g.nx() > (std::int64_t{1} << 13)) throw std::invalid_argument("ct_solve: grid too large for dense stepping");
  if ((p.m == 1) != (scheme == SchemeId::euler_m1 || scheme == SchemeId::crank_nicolson_m1))
    throw std::invalid_argument("ct_solve: scheme order does not match the problem");

  const DenseProblem dp = make_dense_problem(p, g);
  const double dt = g.dt();
  const auto nx = g.nx();
  const auto nt = g.nt();

  auto F = [&](const Vector& u, double t) -> Vector {
    return dp.linear(u) + dp.nonlinear(u) - dp.source_at(t);
  };

  CtResult out;
  out.u.resize(nt, nx);
  Vector prev1 = dp.u0;
  Vector prev2 = p.m == 2 ? dense_u_minus_one(dp, scheme) : Vector();

  const Matrix I = Matrix::Identity(nx, nx);
  for (std::int64_t n = 1; n <= nt; ++n) {
    const double tn = g.t_node(n);
    // the parts of the step equation that do not depend on the unknown level
    Vector fixed;
    double w = 0.0;  // weight of F(u, t_n)
    switch (scheme) {
      case SchemeId::euler_m1:
        fixed = -prev1;
        w = dt;
        break;
      case SchemeId::crank_nicolson_m1:
        fixed = -prev1 + 0.5 * dt * F(prev1, g.t_node(n - 1));
        w = 0.5 * dt;
        break;
      case SchemeId::euler_m2:
        fixed = -2.0 * prev1 + prev2;
        w = dt * dt;
        break;
      case SchemeId::newmark_m2:
        fixed = -2.0 * prev1 + prev2 +
                0.25 * dt * dt * (2.0 * F(prev1, g.t_node(n - 1)) + F(prev2, g.t_node(n - 2)));
        w = 0.25 * dt * dt;
        break;
    }

    Vector u = prev1;
    Vector r = u + fixed + w * F(u, tn);
    const double scale = std::max(1.0, prev1.norm());
    int iters = 0;
    while (r.norm() > cfg.eps_res * scale) {
      if (iters++ >= cfg.n_iter)
        throw std::runtime_error("ct_solve: Newton stalled at step " + std::to_string(n));
      Matrix J = I + w * (dp.L + dp.nonlinear_jacobian(u));
      Vector step = J.partialPivLu().solve(-r);
      double omega = 1.0;
      Vector u_new = u + step;
      Vector r_new = u_new + fixed + w * F(u_new, tn);
      for (int trial = 1; trial < cfg.n_line && r_new.norm() >= r.norm(); ++trial) {
        omega *= cfg.s;
        u_new = u + omega * step;
        r_new = u_new + fixed + w * F(u_new, tn);
      }
      u = std::move(u_new);
      r = std::move(r_new);
    }
    out.step_iterations.push_back(iters);
    out.u.row(n - 1) = u.transpose();
    prev2 = std::move(prev1);
    prev1 = std::move(u);
  }
  return out;
}

}  // namespace ttst
