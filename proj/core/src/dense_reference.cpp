#include "ttst/dense_reference.hpp"

#include <cmath>

namespace ttst {
namespace {

Matrix dense_space_operator(SpaceOp op, std::int64_t nx, double dx, const BoundaryCondition& left,
                            const BoundaryCondition& right) {
  const auto N = static_cast<int>(nx);
  Matrix m = Matrix::Zero(N, N);
  const bool periodic = left.kind == BcKind::periodic || right.kind == BcKind::periodic;
  switch (op) {
    case SpaceOp::d_x: {
      const double s = 1.0 / (2.0 * dx);
      for (int i = 0; i < N; ++i) {
        if (i > 0) m(i, i - 1) -= s;
        if (i + 1 < N) m(i, i + 1) += s;
      }
      if (periodic) {
        m(0, N - 1) -= s;
        m(N - 1, 0) += s;
      } else {
        m(0, 0) -= left.a() * s;
        m(N - 1, N - 1) += right.a() * s;
      }
      break;
    }
    case SpaceOp::d_xx: {
      const double s = 1.0 / (dx * dx);
      for (int i = 0; i < N; ++i) {
        m(i, i) -= 2 * s;
        if (i > 0) m(i, i - 1) += s;
        if (i + 1 < N) m(i, i + 1) += s;
      }
      if (periodic) {
        m(0, N - 1) += s;
        m(N - 1, 0) += s;
      } else {
        m(0, 0) += left.a() * s;
        m(N - 1, N - 1) += right.a() * s;
      }
      break;
    }
    case SpaceOp::d_xxx: {
      const double s = 1.0 / (2.0 * dx * dx * dx);
      for (int i = 0; i < N; ++i) {
        m(i, (i + N - 2) % N) += -1 * s;
        m(i, (i + N - 1) % N) += 2 * s;
        m(i, (i + 1) % N) += -2 * s;
        m(i, (i + 2) % N) += 1 * s;
      }
      break;
    }
  }
  return m;
}

Vector dense_boundary_source(SpaceOp op, std::int64_t nx, double dx, const BoundaryCondition& left,
                             const BoundaryCondition& right) {
  const auto N = static_cast<int>(nx);
  Vector b = Vector::Zero(N);
  switch (op) {
    case SpaceOp::d_x:
      b[0] = -left.b(dx) / (2 * dx);
      b[N - 1] = right.b(dx) / (2 * dx);
      break;
    case SpaceOp::d_xx:
      b[0] = left.b(dx) / (dx * dx);
      b[N - 1] = right.b(dx) / (dx * dx);
      break;
    case SpaceOp::d_xxx: break;
  }
  return b;
}

}  // namespace

Vector DenseProblem::nonlinear(const Vector& u) const {
  switch (p.kind) {
    case NonlinearityKind::quadratic_reaction: return p.nonlin_coef * u.array().square().matrix();
    case NonlinearityKind::conservative_advection: return 0.5 * (Dx * u.array().square().matrix());
    case NonlinearityKind::sine: return u.array().sin().matrix();
  }
  throw std::logic_error("unknown nonlinearity");
}

Matrix DenseProblem::nonlinear_jacobian(const Vector& u) const {
  switch (p.kind) {
    case NonlinearityKind::quadratic_reaction:
      return Matrix((2.0 * p.nonlin_coef * u.array()).matrix().asDiagonal());
    case NonlinearityKind::conservative_advection: return Dx * u.asDiagonal();
    case NonlinearityKind::sine: return Matrix(u.array().cos().matrix().asDiagonal());
  }
  throw std::logic_error("unknown nonlinearity");
}

Vector DenseProblem::source_at(double t) const {
  Vector s = Vector::Zero(g.nx());
  if (p.source)
    for (std::int64_t i = 1; i <= g.nx(); ++i) s[i - 1] = p.source(g.x_center(i), t);
  return s;
}

DenseProblem make_dense_problem(const ProblemSpec& p, const GridSpec& g) {
  DenseProblem dp;
  dp.p = p;
  dp.g = g;
  const auto N = g.nx();
  dp.L = Matrix::Zero(N, N);
  dp.L.diagonal().array() += p.reaction_coef;
  dp.Lc = Vector::Zero(N);
  for (const auto& term : p.linear_terms) {
    dp.L += term.coef * dense_space_operator(term.op, N, g.dx(), p.bc_left, p.bc_right);
    dp.Lc += term.coef * dense_boundary_source(term.op, N, g.dx(), p.bc_left, p.bc_right);
  }
  dp.Dx = dense_space_operator(SpaceOp::d_x, N, g.dx(), p.bc_left, p.bc_right);
  dp.u0 = Vector::Zero(N);
  for (std::int64_t i = 1; i <= N; ++i) dp.u0[i - 1] = p.u0(g.x_center(i));
  if (p.m == 2 && p.ut0) {
    dp.ut0 = Vector::Zero(N);
    for (std::int64_t i = 1; i <= N; ++i) dp.ut0[i - 1] = p.ut0(g.x_center(i));
  }
  return dp;
}

Vector dense_u_minus_one(const DenseProblem& dp, SchemeId scheme) {
  if (dp.p.m != 2) throw std::logic_error("start-up level only defined for second-order problems");
  const double dt = dp.g.dt();
  // u_tt(0) from the PDE: u_tt = s - L u - N(u)
  Vector utt0 = dp.source_at(0.0) - dp.linear(dp.u0) - dp.nonlinear(dp.u0);
  Vector um1 = dp.u0 - dt * dp.ut0 + 0.5 * dt * dt * utt0;
  if (scheme == SchemeId::newmark_m2) {
    // one more time derivative of the PDE (zero-source time derivative assumed)
    Vector uttt0 = -(dp.L * dp.ut0) - dp.nonlinear_jacobian(dp.u0) * dp.ut0;
    um1 -= (dt * dt * dt / 6.0) * uttt0;
  }
  return um1;
}

DenseSystem make_dense_system(const ProblemSpec& p, const GridSpec& g, SchemeId scheme) {
  if (scheme_temporal_order(scheme) != p.m)
    throw std::invalid_argument("scheme temporal order does not match the problem");
  DenseSystem sys;
  sys.dp = make_dense_problem(p, g);
  sys.scheme = scheme;
  if (p.m == 2) sys.umin1 = dense_u_minus_one(sys.dp, scheme);
  return sys;
}

Vector DenseSystem::residual(const Vector& U) const {
  const auto nx = dp.g.nx();
  const auto nt = dp.g.nt();
  const double dt = dp.g.dt();
  Vector r(nt * nx);
  auto slice = [&](std::int64_t n) -> Vector {
    // n = 0 is the initial level, n = -1 the start-up level
    if (n >= 1) return U.segment((n - 1) * nx, nx);
    if (n == 0) return dp.u0;
    return umin1;
  };
  auto F = [&](std::int64_t n) -> Vector {
    Vector u = slice(n);
    return dp.linear(u) + dp.nonlinear(u) - dp.source_at(dp.g.t_node(n));
  };
  for (std::int64_t n = 1; n <= nt; ++n) {
    Vector rn;
    switch (scheme) {
      case SchemeId::euler_m1: rn = slice(n) - slice(n - 1) + dt * F(n); break;
      case SchemeId::crank_nicolson_m1:
        rn = slice(n) - slice(n - 1) + 0.5 * dt * (F(n) + F(n - 1));
        break;
      case SchemeId::euler_m2: rn = slice(n) - 2 * slice(n - 1) + slice(n - 2) + dt * dt * F(n); break;
      case SchemeId::newmark_m2:
        rn = slice(n) - 2 * slice(n - 1) + slice(n - 2) + 0.25 * dt * dt * (F(n) + 2 * F(n - 1) + F(n - 2));
        break;
    }
    r.segment((n - 1) * nx, nx) = rn;
  }
  return r;
}

Vector DenseSystem::constant() const {
  // residual(U) = A(U) + B U - C and every supported nonlinearity vanishes at 0,
  // so C = -residual(0)
  return -residual(Vector::Zero(size()));
}

Matrix DenseSystem::jacobian(const Vector& U) const {
  const auto nx = dp.g.nx();
  const auto nt = dp.g.nt();
  const double dt = dp.g.dt();
  Matrix J = Matrix::Zero(nt * nx, nt * nx);
  Matrix I = Matrix::Identity(nx, nx);
  auto slice = [&](std::int64_t n) -> Vector { return U.segment((n - 1) * nx, nx); };
  auto Fp = [&](std::int64_t n) -> Matrix { return dp.L + dp.nonlinear_jacobian(slice(n)); };
  auto block = [&](std::int64_t row, std::int64_t col) {
    return J.block((row - 1) * nx, (col - 1) * nx, nx, nx);
  };
  for (std::int64_t n = 1; n <= nt; ++n) {
    switch (scheme) {
      case SchemeId::euler_m1:
        block(n, n) = I + dt * Fp(n);
        if (n >= 2) block(n, n - 1) = -I;
        break;
      case SchemeId::crank_nicolson_m1:
        block(n, n) = I + 0.5 * dt * Fp(n);
        if (n >= 2) block(n, n - 1) = -I + 0.5 * dt * Fp(n - 1);
        break;
      case SchemeId::euler_m2:
        block(n, n) = I + dt * dt * Fp(n);
        if (n >= 2) block(n, n - 1) = -2 * I;
        if (n >= 3) block(n, n - 2) = I;
        break;
      case SchemeId::newmark_m2:
        block(n, n) = I + 0.25 * dt * dt * Fp(n);
        if (n >= 2) block(n, n - 1) = -2 * I + 0.5 * dt * dt * Fp(n - 1);
        if (n >= 3) block(n, n - 2) = I + 0.25 * dt * dt * Fp(n - 2);
        break;
    }
  }
  return J;
}

DenseNewtonResult dense_newton(const DenseSystem& sys, const Vector& U_init, double eps_res, int max_iter,
                               double shrink, int n_line) {
  DenseNewtonResult out;
  out.U = U_init;
  const double c_norm = sys.constant().norm();
  const double scale = c_norm > 0 ? c_norm : 1.0;
  Vector f = sys.residual(out.U);
  out.residual_history.push_back(f.norm());
  for (int it = 0; it < max_iter; ++it) {
    if (f.norm() / scale < eps_res) {
      out.converged = true;
      break;
    }
    Matrix J = sys.jacobian(out.U);
    Vector du = J.partialPivLu().solve(-f);
    double omega = 1.0;
    Vector best = out.U + du;
    Vector fb = sys.residual(best);
    for (int trial = 1; trial < n_line && fb.norm() >= f.norm(); ++trial) {
      omega *= shrink;
      best = out.U + omega * du;
      fb = sys.residual(best);
    }
    out.U = best;
    f = fb;
    out.iterations = it + 1;
    out.residual_history.push_back(f.norm());
  }
  if (f.norm() / scale < eps_res) out.converged = true;
  return out;
}

}  // namespace ttst
