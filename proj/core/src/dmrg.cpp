#include "ttst/dmrg.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace ttst {
namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapRM = Eigen::Map<RowMat>;
using CMapRM = Eigen::Map<const RowMat>;

// environment over the operator: E(a, c, b) with a: bra rank, c: J rank, b: ket rank
struct Env3 {
  int ra = 1, rc = 1, rb = 1;
  std::vector<double> v{1.0};
  double& at(int a, int c, int b) { return v[(static_cast<size_t>(a) * rc + c) * rb + b]; }
  double at(int a, int c, int b) const { return v[(static_cast<size_t>(a) * rc + c) * rb + b]; }
};

// environment over the right-hand side: E(a, e) with a: bra rank, e: b rank
struct Env2 {
  int ra = 1, re = 1;
  std::vector<double> v{1.0};
  double& at(int a, int e) { return v[static_cast<size_t>(a) * re + e]; }
  double at(int a, int e) const { return v[static_cast<size_t>(a) * re + e]; }
};

Env3 push_left(const Env3& l, const TtCore3& xc, const TtCore4& jc) {
  Env3 out;
  out.ra = xc.r1;
  out.rc = jc.r1;
  out.rb = xc.r1;
  out.v.assign(static_cast<size_t>(out.ra) * out.rc * out.rb, 0.0);
  for (int a = 0; a < l.ra; ++a)
    for (int c = 0; c < l.rc; ++c)
      for (int b = 0; b < l.rb; ++b) {
        const double lv = l.at(a, c, b);
        if (lv == 0.0) continue;
        for (int ap = 0; ap < out.ra; ++ap)
          for (int i = 0; i < xc.n; ++i) {
            const double xa = xc.at(a, i, ap);
            if (xa == 0.0) continue;
            for (int cp = 0; cp < out.rc; ++cp)
              for (int j = 0; j < jc.m; ++j) {
                const double jv = jc.at(c, i, j, cp);
                if (jv == 0.0) continue;
                for (int bp = 0; bp < out.rb; ++bp) out.at(ap, cp, bp) += lv * xa * jv * xc.at(b, j, bp);
              }
          }
      }
  return out;
}

Env3 push_right(const Env3& r, const TtCore3& xc, const TtCore4& jc) {
  Env3 out;
  out.ra = xc.r0;
  out.rc = jc.r0;
  out.rb = xc.r0;
  out.v.assign(static_cast<size_t>(out.ra) * out.rc * out.rb, 0.0);
  for (int ap = 0; ap < r.ra; ++ap)
    for (int cp = 0; cp < r.rc; ++cp)
      for (int bp = 0; bp < r.rb; ++bp) {
        const double rv = r.at(ap, cp, bp);
        if (rv == 0.0) continue;
        for (int a = 0; a < out.ra; ++a)
          for (int i = 0; i < xc.n; ++i) {
            const double xa = xc.at(a, i, ap);
            if (xa == 0.0) continue;
            for (int c = 0; c < out.rc; ++c)
              for (int j = 0; j < jc.m; ++j) {
                const double jv = jc.at(c, i, j, cp);
                if (jv == 0.0) continue;
                for (int b = 0; b < out.rb; ++b) out.at(a, c, b) += rv * xa * jv * xc.at(b, j, bp);
              }
          }
      }
  return out;
}

Env2 push_left(const Env2& l, const TtCore3& xc, const TtCore3& bc) {
  Env2 out;
  out.ra = xc.r1;
  out.re = bc.r1;
  out.v.assign(static_cast<size_t>(out.ra) * out.re, 0.0);
  for (int a = 0; a < l.ra; ++a)
    for (int e = 0; e < l.re; ++e) {
      const double lv = l.at(a, e);
      if (lv == 0.0) continue;
      for (int i = 0; i < xc.n; ++i)
        for (int ap = 0; ap < out.ra; ++ap) {
          const double xa = xc.at(a, i, ap);
          if (xa == 0.0) continue;
          for (int ep = 0; ep < out.re; ++ep) out.at(ap, ep) += lv * xa * bc.at(e, i, ep);
        }
    }
  return out;
}

Env2 push_right(const Env2& r, const TtCore3& xc, const TtCore3& bc) {
  Env2 out;
  out.ra = xc.r0;
  out.re = bc.r0;
  out.v.assign(static_cast<size_t>(out.ra) * out.re, 0.0);
  for (int ap = 0; ap < r.ra; ++ap)
    for (int ep = 0; ep < r.re; ++ep) {
      const double rv = r.at(ap, ep);
      if (rv == 0.0) continue;
      for (int i = 0; i < xc.n; ++i)
        for (int a = 0; a < out.ra; ++a) {
          const double xa = xc.at(a, i, ap);
          if (xa == 0.0) continue;
          for (int e = 0; e < out.re; ++e) out.at(a, e) += rv * xa * bc.at(e, i, ep);
        }
    }
  return out;
}

void right_orthogonalize(TtVector& x) {
  const int d = x.order();
  for (int k = d - 1; k >= 1; --k) {
    auto& c = x.cores[k];
    CMapRM m(c.v.data(), c.r0, static_cast<Eigen::Index>(c.n) * c.r1);
    auto [q, r] = qr(Matrix(m.transpose()));
    const int rk = static_cast<int>(q.cols());
    TtCore3 nc(rk, c.n, c.r1);
    MapRM(nc.v.data(), rk, static_cast<Eigen::Index>(c.n) * c.r1) = q.transpose();
    auto& px = x.cores[k - 1];
    CMapRM left(px.v.data(), static_cast<Eigen::Index>(px.r0) * px.n, px.r1);
    RowMat merged = left * r.transpose();
    TtCore3 np(px.r0, px.n, rk);
    std::memcpy(np.v.data(), merged.data(), sizeof(double) * merged.size());
    x.cores[k] = std::move(nc);
    x.cores[k - 1] = std::move(np);
  }
}

// merged operator of two adjacent J cores: T(c, i1, j1, i2, j2, c'')
struct MergedOp {
  int rc0, n1, m1, n2, m2, rc1;
  std::vector<double> v;
  double at(int c, int i1, int j1, int i2, int j2, int cpp) const {
    return v[((((static_cast<size_t>(c) * n1 + i1) * m1 + j1) * n2 + i2) * m2 + j2) * rc1 + cpp];
  }
};

MergedOp merge_op(const TtCore4& a, const TtCore4& b) {
  MergedOp t{a.r0, a.n, a.m, b.n, b.m, b.r1, {}};
  t.v.assign(static_cast<size_t>(t.rc0) * t.n1 * t.m1 * t.n2 * t.m2 * t.rc1, 0.0);
  for (int c = 0; c < a.r0; ++c)
    for (int i1 = 0; i1 < a.n; ++i1)
      for (int j1 = 0; j1 < a.m; ++j1)
        for (int mid = 0; mid < a.r1; ++mid) {
          const double av = a.at(c, i1, j1, mid);
          if (av == 0.0) continue;
          for (int i2 = 0; i2 < b.n; ++i2)
            for (int j2 = 0; j2 < b.m; ++j2)
              for (int cpp = 0; cpp < b.r1; ++cpp)
                t.v[((((static_cast<size_t>(c) * t.n1 + i1) * t.m1 + j1) * t.n2 + i2) * t.m2 + j2) * t.rc1 +
                    cpp] += av * b.at(mid, i2, j2, cpp);
        }
  return t;
}

Matrix local_matrix(const Env3& l, const MergedOp& t, const Env3& r) {
  const int rows = l.ra * t.n1 * t.n2 * r.ra;
  const int cols = l.rb * t.m1 * t.m2 * r.rb;
  Matrix a = Matrix::Zero(rows, cols);
  for (int la = 0; la < l.ra; ++la)
    for (int lb = 0; lb < l.rb; ++lb)
      for (int c = 0; c < l.rc; ++c) {
        const double lv = l.at(la, c, lb);
        if (lv == 0.0) continue;
        for (int i1 = 0; i1 < t.n1; ++i1)
          for (int j1 = 0; j1 < t.m1; ++j1)
            for (int i2 = 0; i2 < t.n2; ++i2)
              for (int j2 = 0; j2 < t.m2; ++j2)
                for (int cpp = 0; cpp < t.rc1; ++cpp) {
                  const double tv = t.at(c, i1, j1, i2, j2, cpp);
                  if (tv == 0.0) continue;
                  for (int ra = 0; ra < r.ra; ++ra)
                    for (int rb = 0; rb < r.rb; ++rb) {
                      const double rv = r.at(ra, cpp, rb);
                      if (rv == 0.0) continue;
                      const int row = ((la * t.n1 + i1) * t.n2 + i2) * r.ra + ra;
                      const int col = ((lb * t.m1 + j1) * t.m2 + j2) * r.rb + rb;
                      a(row, col) += lv * tv * rv;
                    }
                }
      }
  return a;
}

Vector local_rhs(const Env2& l, const TtCore3& b1, const TtCore3& b2, const Env2& r) {
  const int rows = l.ra * b1.n * b2.n * r.ra;
  Vector out = Vector::Zero(rows);
  for (int la = 0; la < l.ra; ++la)
    for (int e = 0; e < l.re; ++e) {
      const double lv = l.at(la, e);
      if (lv == 0.0) continue;
      for (int i1 = 0; i1 < b1.n; ++i1)
        for (int mid = 0; mid < b1.r1; ++mid) {
          const double bv = b1.at(e, i1, mid);
          if (bv == 0.0) continue;
          for (int i2 = 0; i2 < b2.n; ++i2)
            for (int ep = 0; ep < b2.r1; ++ep) {
              const double bv2 = b2.at(mid, i2, ep);
              if (bv2 == 0.0) continue;
              for (int ra = 0; ra < r.ra; ++ra)
                out[((la * b1.n + i1) * b2.n + i2) * r.ra + ra] += lv * bv * bv2 * r.at(ra, ep);
            }
        }
    }
  return out;
}

double rel_residual(const TtOperator& j, const TtVector& x, const TtVector& b, double b_norm) {
  TtVector r = tt_add(tt_matvec(j, x), tt_scale(b, -1.0));
  return tt_norm(r) / b_norm;
}

}  // namespace

DmrgResult dmrg_solve(const TtOperator& j, const TtVector& b, const TtVector& x0, const DmrgConfig& cfg) {
  j.check_valid();
  b.check_valid();
  if (j.row_sizes() != b.mode_sizes() || j.col_sizes() != b.mode_sizes())
    throw std::invalid_argument("dmrg_solve: operator/rhs size mismatch");
  if (cfg.n_sweeps < 1 || cfg.chi < 1 || cfg.eps_dmrg <= 0)
    throw std::invalid_argument("dmrg_solve: bad configuration");
  const int d = b.order();
  if (d < 2) throw std::invalid_argument("dmrg_solve: need at least two cores");

  const double b_norm = tt_norm(b);
  DmrgResult res;
  if (b_norm == 0.0) {
    res.x = tt_constant(b.mode_sizes(), 0.0);
    return res;
  }

  TtVector x = x0.cores.empty() ? tt_round(b, cfg.local_trunc, cfg.chi) : x0;
  if (x.mode_sizes() != b.mode_sizes()) throw std::invalid_argument("dmrg_solve: initial guess size mismatch");
  right_orthogonalize(x);

  std::vector<Env3> lenv(d + 1), renv(d + 1);
  std::vector<Env2> lrhs(d + 1), rrhs(d + 1);
  for (int k = d - 1; k >= 0; --k) {
    renv[k] = push_right(renv[k + 1], x.cores[k], j.cores[k]);
    rrhs[k] = push_right(rrhs[k + 1], x.cores[k], b.cores[k]);
  }

  auto solve_pair = [&](int k, bool absorb_right) {
    const auto& x1 = x.cores[k];
    const auto& x2 = x.cores[k + 1];
    MergedOp t = merge_op(j.cores[k], j.cores[k + 1]);
    Matrix a_loc = local_matrix(lenv[k], t, renv[k + 2]);
    Vector b_loc = local_rhs(lrhs[k], b.cores[k], b.cores[k + 1], rrhs[k + 2]);
    if (!a_loc.allFinite() || !b_loc.allFinite()) throw std::runtime_error("dmrg_solve: non-finite local system");
    if (cfg.observe_local) cfg.observe_local(k, x, a_loc, b_loc);
    Vector sol = tikhonov_solve(a_loc, b_loc, cfg.alpha);

    // split (r0*n1) x (n2*r1)
    const int rows = x1.r0 * x1.n, cols = x2.n * x2.r1;
    CMapRM sm(sol.data(), rows, cols);
    SvdResult dec = svd(Matrix(sm));
    int rk = std::min({truncation_rank(dec.s, cfg.local_trunc), cfg.chi, static_cast<int>(dec.s.size())});
    TtCore3 c1(x1.r0, x1.n, rk), c2(rk, x2.n, x2.r1);
    if (absorb_right) {
      MapRM(c1.v.data(), rows, rk) = dec.u.leftCols(rk);
      MapRM(c2.v.data(), rk, cols) = dec.s.head(rk).asDiagonal() * dec.vt.topRows(rk);
    } else {
      MapRM(c1.v.data(), rows, rk) = dec.u.leftCols(rk) * dec.s.head(rk).asDiagonal();
      MapRM(c2.v.data(), rk, cols) = dec.vt.topRows(rk);
    }
    x.cores[k] = std::move(c1);
    x.cores[k + 1] = std::move(c2);
  };

  for (int sweep = 0; sweep < cfg.n_sweeps; ++sweep) {
    for (int k = 0; k <= d - 2; ++k) {
      solve_pair(k, true);
      lenv[k + 1] = push_left(lenv[k], x.cores[k], j.cores[k]);
      lrhs[k + 1] = push_left(lrhs[k], x.cores[k], b.cores[k]);
    }
    for (int k = d - 2; k >= 0; --k) {
      solve_pair(k, false);
      renv[k + 1] = push_right(renv[k + 2], x.cores[k + 1], j.cores[k + 1]);
      rrhs[k + 1] = push_right(rrhs[k + 2], x.cores[k + 1], b.cores[k + 1]);
    }
    res.sweeps_used = sweep + 1;
    res.achieved_residual = rel_residual(j, x, b, b_norm);
    if (res.achieved_residual <= cfg.eps_dmrg) break;
  }
  res.x = std::move(x);
  return res;
}

DmrgResult dmrg_solve(const TtOperator& j, const TtVector& b, const DmrgConfig& cfg) {
  return dmrg_solve(j, b, TtVector{}, cfg);
}

}  // namespace ttst
