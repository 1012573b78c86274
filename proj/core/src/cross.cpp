#include "ttst/cross.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ttst {
namespace {

using Index = std::vector<int>;  // partial multi-index

Index cat(const Index& a, int i) {
  Index r = a;
  r.push_back(i);
  return r;
}

Index cat(int i, const Index& a) {
  Index r;
  r.reserve(a.size() + 1);
  r.push_back(i);
  r.insert(r.end(), a.begin(), a.end());
  return r;
}

Index cat(const Index& a, int i, int j, const Index& b) {
  Index r;
  r.reserve(a.size() + b.size() + 2);
  r.insert(r.end(), a.begin(), a.end());
  r.push_back(i);
  r.push_back(j);
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

Index cat3(const Index& a, int i, const Index& b) {
  Index r;
  r.reserve(a.size() + b.size() + 1);
  r.insert(r.end(), a.begin(), a.end());
  r.push_back(i);
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

/// Row vector e_1^T X_0(i_0) ... X_{k-1}(i_{k-1}) for a prefix of length k.
Eigen::RowVectorXd left_vec(const TtVector& x, const Index& prefix) {
  Eigen::RowVectorXd v = Eigen::RowVectorXd::Ones(1);
  for (size_t k = 0; k < prefix.size(); ++k) {
    const TtCore3& c = x.cores[k];
    Eigen::RowVectorXd next = Eigen::RowVectorXd::Zero(c.r1);
    for (int a = 0; a < c.r0; ++a)
      for (int b = 0; b < c.r1; ++b) next[b] += v[a] * c.at(a, prefix[k], b);
    v = std::move(next);
  }
  return v;
}

/// Column vector X_k(j_0) ... X_{d-1}(...) e_1 for a suffix starting at core k.
Vector right_vec(const TtVector& x, int k, const Index& suffix) {
  Vector v = Vector::Ones(1);
  const int d = x.order();
  for (int p = d - 1; p >= k; --p) {
    const TtCore3& c = x.cores[p];
    Vector next = Vector::Zero(c.r0);
    const int digit = suffix[p - k];
    for (int a = 0; a < c.r0; ++a)
      for (int b = 0; b < c.r1; ++b) next[a] += c.at(a, digit, b) * v[b];
    v = std::move(next);
  }
  return v;
}

/// Greedy well-conditioned row subset of a tall matrix (pivot order of a
/// column-pivoted QR of the transpose).
std::vector<int> pivot_rows(const Matrix& u, int r) {
  Eigen::ColPivHouseholderQR<Matrix> qr(u.transpose());
  auto perm = qr.colsPermutation().indices();
  std::vector<int> rows(r);
  for (int i = 0; i < r; ++i) rows[i] = perm[i];
  return rows;
}

struct CrossWorkspace {
  const TtVector& x;
  const std::function<double(double)>& f;
  std::vector<std::vector<Index>> isets, jsets;  // isets[k]: modes 0..k-1; jsets[k]: modes k..d-1

  double g(const Index& full) const { return f(tt_entry(x, full)); }

  Matrix local_matrix(int k) const {
    // two sites: cores k-1 and k (bond position k in 1..d-1)
    const auto& il = isets[k - 1];
    const auto& jr = jsets[k + 1];
    const int nl = x.cores[k - 1].n, nr = x.cores[k].n;
    Matrix m(static_cast<int>(il.size()) * nl, nr * static_cast<int>(jr.size()));
    for (size_t a = 0; a < il.size(); ++a) {
      Eigen::RowVectorXd lv = left_vec(x, il[a]);
      for (size_t b = 0; b < jr.size(); ++b) {
        Vector rv = right_vec(x, k + 1, jr[b]);
        for (int i = 0; i < nl; ++i)
          for (int j = 0; j < nr; ++j) {
            double val = 0;
            const TtCore3& cl = x.cores[k - 1];
            const TtCore3& cr = x.cores[k];
            for (int p = 0; p < cl.r1; ++p) {
              double t = 0;
              for (int q = 0; q < cr.r1; ++q) t += cr.at(p, j, q) * rv[q];
              double s = 0;
              for (int al = 0; al < cl.r0; ++al) s += lv[al] * cl.at(al, i, p);
              val += s * t;
            }
            m(static_cast<int>(a) * nl + i, j * static_cast<int>(jr.size()) + static_cast<int>(b)) = f(val);
          }
      }
    }
    return m;
  }
};

}  // namespace

CrossError::CrossError(double err)
    : std::runtime_error("cross approximation failed to reach the requested tolerance"), achieved(err) {}

double tt_entry(const TtVector& x, const std::vector<int>& idx) {
  Eigen::RowVectorXd v = Eigen::RowVectorXd::Ones(1);
  for (int k = 0; k < x.order(); ++k) {
    const TtCore3& c = x.cores[k];
    Eigen::RowVectorXd next = Eigen::RowVectorXd::Zero(c.r1);
    for (int a = 0; a < c.r0; ++a)
      for (int b = 0; b < c.r1; ++b) next[b] += v[a] * c.at(a, idx[k], b);
    v = std::move(next);
  }
  return v[0];
}

TtVector tt_apply_elementwise(const std::function<double(double)>& f, const TtVector& x, double eps,
                              int chi_max) {
  CrossOptions opt;
  opt.eps = eps;
  opt.chi_max = chi_max;
  return tt_apply_elementwise(f, x, opt);
}

TtVector tt_apply_elementwise(const std::function<double(double)>& f, const TtVector& x,
                              const CrossOptions& opt) {
  const int d = x.order();
  const auto modes = x.mode_sizes();

  if (x.total_size() <= opt.dense_fallback_threshold) {
    std::vector<double> full = tt_to_full(x, opt.dense_fallback_threshold);
    for (auto& v : full) v = f(v);
    TtVector y = tt_from_full(full, modes, 0.5 * opt.eps);
    if (y.max_rank() > opt.chi_max) y = tt_round(y, 0.0, opt.chi_max);
    return y;
  }

  std::mt19937 gen(opt.seed);
  CrossWorkspace ws{x, f, {}, {}};
  ws.isets.resize(d + 1);
  ws.jsets.resize(d + 1);
  ws.isets[0] = {Index{}};
  ws.jsets[d] = {Index{}};

  // nested random right sets
  const int r_init = std::min(4, opt.chi_max);
  for (int k = d - 1; k >= 1; --k) {
    std::int64_t cap = 1;
    for (int p = k; p < d && cap <= 64; ++p) cap *= modes[p];
    const int r = static_cast<int>(std::min<std::int64_t>(r_init, cap));
    std::vector<Index> set;
    for (int s = 0; s < r; ++s) {
      int digit = std::uniform_int_distribution<int>(0, modes[k] - 1)(gen);
      const auto& next = ws.jsets[k + 1];
      const Index& tail = next[std::uniform_int_distribution<size_t>(0, next.size() - 1)(gen)];
      Index cand = cat(digit, tail);
      if (std::find(set.begin(), set.end(), cand) == set.end())
        set.push_back(std::move(cand));
      else
        --s;
    }
    ws.jsets[k] = std::move(set);
  }
  for (int k = 1; k < d; ++k) ws.isets[k] = {};  // filled by the first forward pass

  const double local_eps = 0.5 * opt.eps / std::sqrt(static_cast<double>(std::max(1, d - 1)));

  for (int sweep = 0; sweep < opt.n_sweeps; ++sweep) {
    // forward: refresh left index sets
    for (int k = 1; k < d; ++k) {
      Matrix m = ws.local_matrix(k);
      SvdResult s = svd(m);
      int r = truncation_rank(s.s, local_eps);
      r = std::min({r, opt.chi_max, static_cast<int>(m.rows()), static_cast<int>(m.cols())});
      auto rows = pivot_rows(s.u.leftCols(r), r);
      const int nl = modes[k - 1];
      std::vector<Index> set;
      for (int row : rows) set.push_back(cat(ws.isets[k - 1][row / nl], row % nl));
      ws.isets[k] = std::move(set);
    }
    // backward: refresh right index sets
    for (int k = d - 1; k >= 1; --k) {
      Matrix m = ws.local_matrix(k);
      SvdResult s = svd(m);
      int r = truncation_rank(s.s, local_eps);
      r = std::min({r, opt.chi_max, static_cast<int>(m.rows()), static_cast<int>(m.cols())});
      auto cols = pivot_rows(Matrix(s.vt.topRows(r).transpose()), r);
      const int jr = static_cast<int>(ws.jsets[k + 1].size());
      std::vector<Index> set;
      for (int col : cols) set.push_back(cat(col / jr, ws.jsets[k + 1][col % jr]));
      ws.jsets[k] = std::move(set);
    }
  }
  // one more forward pass so left sets match the final right sets
  for (int k = 1; k < d; ++k) {
    Matrix m = ws.local_matrix(k);
    SvdResult s = svd(m);
    int r = truncation_rank(s.s, local_eps);
    r = std::min({r, opt.chi_max, static_cast<int>(m.rows()), static_cast<int>(m.cols()),
                  static_cast<int>(ws.jsets[k].size())});
    auto rows = pivot_rows(s.u.leftCols(r), r);
    const int nl = modes[k - 1];
    std::vector<Index> set;
    for (int row : rows) set.push_back(cat(ws.isets[k - 1][row / nl], row % nl));
    ws.isets[k] = std::move(set);
    ws.jsets[k].resize(r);
  }

  // cross interpolation cores: G_k = A_k * pinv(Ahat_k)
  TtVector y;
  for (int k = 0; k < d; ++k) {
    const int rl = static_cast<int>(ws.isets[k].size());
    const int rr = (k == d - 1) ? 1 : static_cast<int>(ws.isets[k + 1].size());
    TtCore3 core(rl, modes[k], rr);
    if (k == d - 1) {
      for (int a = 0; a < rl; ++a)
        for (int i = 0; i < modes[k]; ++i) core.at(a, i, 0) = ws.g(cat(ws.isets[k][a], i));
    } else {
      Matrix ak(rl * modes[k], rr), ahat(rr, rr);
      for (int a = 0; a < rl; ++a)
        for (int i = 0; i < modes[k]; ++i)
          for (int b = 0; b < rr; ++b)
            ak(a * modes[k] + i, b) = ws.g(cat3(ws.isets[k][a], i, ws.jsets[k + 1][b]));
      for (int g = 0; g < rr; ++g)
        for (int b = 0; b < rr; ++b) {
          Index full = ws.isets[k + 1][g];
          full.insert(full.end(), ws.jsets[k + 1][b].begin(), ws.jsets[k + 1][b].end());
          ahat(g, b) = ws.g(full);
        }
      Matrix gk = (ahat.transpose().completeOrthogonalDecomposition().solve(ak.transpose())).transpose();
      for (int a = 0; a < rl; ++a)
        for (int i = 0; i < modes[k]; ++i)
          for (int b = 0; b < rr; ++b) core.at(a, i, b) = gk(a * modes[k] + i, b);
    }
    y.cores.push_back(std::move(core));
  }
  y = tt_round(y, 0.5 * opt.eps, opt.chi_max);

  // held-out validation pivots
  double num = 0, den = 0;
  for (int s = 0; s < opt.validation_pivots; ++s) {
    Index idx(d);
    for (int k = 0; k < d; ++k) idx[k] = std::uniform_int_distribution<int>(0, modes[k] - 1)(gen);
    const double ref = f(tt_entry(x, idx));
    const double got = tt_entry(y, idx);
    num += (got - ref) * (got - ref);
    den += ref * ref;
  }
  const double err = std::sqrt(num) / std::max(std::sqrt(den), 1e-300);
  if (den > 0 && err > opt.eps) throw CrossError(err);
  if (den == 0 && num > opt.eps * opt.eps) throw CrossError(std::sqrt(num));
  return y;
}

}  // namespace ttst
