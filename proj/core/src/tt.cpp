#include "ttst/tt.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace ttst {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapRM = Eigen::Map<RowMat>;
using CMapRM = Eigen::Map<const RowMat>;

int bit_reverse(std::int64_t x, int q, std::int64_t* out) {
  std::int64_t r = 0;
  for (int k = 0; k < q; ++k) r |= ((x >> k) & 1) << (q - 1 - k);
  *out = r;
  return q;
}

std::int64_t bitrev(std::int64_t x, int q) {
  std::int64_t r;
  bit_reverse(x, q, &r);
  return r;
}

int log2_exact(std::int64_t n, const char* what) {
  int q = 0;
  std::int64_t m = n;
  while (m > 1) {
    if (m % 2 != 0) throw std::invalid_argument(std::string(what) + ": size is not a power of two");
    m /= 2;
    ++q;
  }
  if (n < 1) throw std::invalid_argument(std::string(what) + ": empty");
  return q;
}

}  // namespace

// ---- struct helpers ---------------------------------------------------------------

std::vector<int> TtVector::mode_sizes() const {
  std::vector<int> n;
  n.reserve(cores.size());
  for (const auto& c : cores) n.push_back(c.n);
  return n;
}

std::vector<int> TtVector::ranks() const {
  std::vector<int> r;
  r.reserve(cores.size() + 1);
  r.push_back(cores.empty() ? 1 : cores.front().r0);
  for (const auto& c : cores) r.push_back(c.r1);
  return r;
}

int TtVector::max_rank() const {
  int m = 1;
  for (const auto& c : cores) m = std::max({m, c.r0, c.r1});
  return m;
}

std::int64_t TtVector::total_size() const {
  std::int64_t t = 1;
  for (const auto& c : cores) t *= c.n;
  return t;
}

std::int64_t TtVector::storage_size() const {
  std::int64_t t = 0;
  for (const auto& c : cores) t += static_cast<std::int64_t>(c.r0) * c.n * c.r1;
  return t;
}

void TtVector::check_valid() const {
  if (cores.empty()) throw std::invalid_argument("TtVector: no cores");
  if (cores.front().r0 != 1 || cores.back().r1 != 1)
    throw std::invalid_argument("TtVector: boundary ranks must be 1");
  for (size_t k = 0; k + 1 < cores.size(); ++k)
    if (cores[k].r1 != cores[k + 1].r0) throw std::invalid_argument("TtVector: bond mismatch");
  for (const auto& c : cores)
    for (double x : c.v)
      if (!std::isfinite(x)) throw std::invalid_argument("TtVector: non-finite core entry");
}

std::vector<int> TtOperator::row_sizes() const {
  std::vector<int> n;
  for (const auto& c : cores) n.push_back(c.n);
  return n;
}

std::vector<int> TtOperator::col_sizes() const {
  std::vector<int> m;
  for (const auto& c : cores) m.push_back(c.m);
  return m;
}

std::vector<int> TtOperator::ranks() const {
  std::vector<int> r;
  r.push_back(cores.empty() ? 1 : cores.front().r0);
  for (const auto& c : cores) r.push_back(c.r1);
  return r;
}

int TtOperator::max_rank() const {
  int m = 1;
  for (const auto& c : cores) m = std::max({m, c.r0, c.r1});
  return m;
}

void TtOperator::check_valid() const {
  if (cores.empty()) throw std::invalid_argument("TtOperator: no cores");
  if (cores.front().r0 != 1 || cores.back().r1 != 1)
    throw std::invalid_argument("TtOperator: boundary ranks must be 1");
  for (size_t k = 0; k + 1 < cores.size(); ++k)
    if (cores[k].r1 != cores[k + 1].r0) throw std::invalid_argument("TtOperator: bond mismatch");
}

// ---- operator <-> flat-vector view ------------------------------------------------

namespace {

// A TtCore4 (r0,n,m,r1) has the same flat layout as a TtCore3 (r0,n*m,r1).
TtVector op_as_vector(const TtOperator& a) {
  TtVector x;
  x.cores.reserve(a.cores.size());
  for (const auto& c : a.cores) {
    TtCore3 g(c.r0, c.n * c.m, c.r1);
    g.v = c.v;
    x.cores.push_back(std::move(g));
  }
  return x;
}

TtOperator vector_as_op(const TtVector& x, const std::vector<int>& rows, const std::vector<int>& cols) {
  TtOperator a;
  a.cores.reserve(x.cores.size());
  for (size_t k = 0; k < x.cores.size(); ++k) {
    const auto& g = x.cores[k];
    TtCore4 c(g.r0, rows[k], cols[k], g.r1);
    c.v = g.v;
    a.cores.push_back(std::move(c));
  }
  return a;
}

}  // namespace

// ---- construction / densification -------------------------------------------------

TtVector tt_from_full(const std::vector<double>& data, const std::vector<int>& modes, double eps) {
  std::int64_t total = 1;
  for (int n : modes) total *= n;
  if (total != static_cast<std::int64_t>(data.size()))
    throw std::invalid_argument("tt_from_full: mode sizes do not match data length");
  const int d = static_cast<int>(modes.size());
  if (d == 0) throw std::invalid_argument("tt_from_full: no modes");

  TtVector out;
  double norm = CMapRM(data.data(), 1, data.size()).norm();
  if (norm == 0.0) {
    for (int k = 0; k < d; ++k) out.cores.emplace_back(1, modes[k], 1);
    return out;
  }
  const double delta = eps * norm / std::sqrt(std::max(d - 1, 1));

  std::vector<double> cur = data;
  int r = 1;
  std::int64_t rest = total;
  for (int k = 0; k < d - 1; ++k) {
    const Eigen::Index rows = static_cast<Eigen::Index>(r) * modes[k];
    const Eigen::Index cols = static_cast<Eigen::Index>(rest / modes[k]);
    CMapRM w(cur.data(), rows, cols);
    SvdResult dec = svd(w);
    int rk = truncation_rank_abs(dec.s, delta);
    rk = std::min<int>(rk, static_cast<int>(dec.s.size()));

    TtCore3 core(r, modes[k], rk);
    MapRM(core.v.data(), rows, rk) = dec.u.leftCols(rk);
    out.cores.push_back(std::move(core));

    RowMat carry = dec.s.head(rk).asDiagonal() * dec.vt.topRows(rk);
    cur.assign(carry.data(), carry.data() + carry.size());
    r = rk;
    rest = cols;
  }
  TtCore3 last(r, modes[d - 1], 1);
  last.v = cur;
  out.cores.push_back(std::move(last));
  return out;
}

std::vector<double> tt_to_full(const TtVector& x, std::int64_t size_cap) {
  x.check_valid();
  const std::int64_t total = x.total_size();
  if (total > size_cap) throw std::runtime_error("tt_to_full: size cap exceeded");
  RowMat acc = RowMat::Ones(1, 1);
  for (const auto& c : x.cores) {
    CMapRM m(c.v.data(), c.r0, static_cast<Eigen::Index>(c.n) * c.r1);
    RowMat next = acc * m;  // (P x n*r1), row-major -> (P*n x r1)
    acc = MapRM(next.data(), next.rows() * c.n, c.r1);
  }
  return std::vector<double>(acc.data(), acc.data() + acc.size());
}

Matrix tt_op_to_dense(const TtOperator& a, std::int64_t size_cap) {
  a.check_valid();
  TtVector flat = op_as_vector(a);
  std::vector<double> full = tt_to_full(flat, size_cap);
  std::int64_t nr = 1, nc = 1;
  for (const auto& c : a.cores) {
    nr *= c.n;
    nc *= c.m;
  }
  Matrix m = Matrix::Zero(nr, nc);
  const int d = a.order();
  std::vector<int> digit(d, 0);
  for (std::int64_t off = 0; off < static_cast<std::int64_t>(full.size()); ++off) {
    // decode row-major digits a_k = i_k * m_k + j_k (mode 1 slowest)
    std::int64_t rem = off;
    std::int64_t row = 0, col = 0;
    for (int k = d - 1; k >= 0; --k) {
      digit[k] = static_cast<int>(rem % (a.cores[k].n * a.cores[k].m));
      rem /= a.cores[k].n * a.cores[k].m;
    }
    for (int k = 0; k < d; ++k) {
      row = row * a.cores[k].n + digit[k] / a.cores[k].m;
      col = col * a.cores[k].m + digit[k] % a.cores[k].m;
    }
    m(row, col) = full[off];
  }
  return m;
}

TtOperator tt_op_from_dense(const Matrix& m, const std::vector<int>& row_modes,
                            const std::vector<int>& col_modes, double eps) {
  if (row_modes.size() != col_modes.size())
    throw std::invalid_argument("tt_op_from_dense: mode count mismatch");
  const int d = static_cast<int>(row_modes.size());
  std::int64_t nr = 1, nc = 1;
  for (int n : row_modes) nr *= n;
  for (int n : col_modes) nc *= n;
  if (nr != m.rows() || nc != m.cols())
    throw std::invalid_argument("tt_op_from_dense: matrix shape does not match modes");

  std::vector<int> modes(d);
  for (int k = 0; k < d; ++k) modes[k] = row_modes[k] * col_modes[k];
  std::vector<double> full(static_cast<size_t>(nr) * nc, 0.0);
  std::vector<int> rdig(d), cdig(d);
  for (std::int64_t row = 0; row < nr; ++row) {
    std::int64_t rr = row;
    for (int k = d - 1; k >= 0; --k) {
      rdig[k] = static_cast<int>(rr % row_modes[k]);
      rr /= row_modes[k];
    }
    for (std::int64_t col = 0; col < nc; ++col) {
      std::int64_t cc = col;
      for (int k = d - 1; k >= 0; --k) {
        cdig[k] = static_cast<int>(cc % col_modes[k]);
        cc /= col_modes[k];
      }
      std::int64_t off = 0;
      for (int k = 0; k < d; ++k) off = off * modes[k] + (rdig[k] * col_modes[k] + cdig[k]);
      full[off] = m(row, col);
    }
  }
  TtVector flat = tt_from_full(full, modes, eps);
  return vector_as_op(flat, row_modes, col_modes);
}

TtVector tt_constant(const std::vector<int>& modes, double value) {
  TtVector out;
  for (size_t k = 0; k < modes.size(); ++k) {
    TtCore3 c(1, modes[k], 1);
    std::fill(c.v.begin(), c.v.end(), k == 0 ? value : 1.0);
    out.cores.push_back(std::move(c));
  }
  return out;
}

// ---- arithmetic -------------------------------------------------------------------

TtVector tt_add(const TtVector& x, const TtVector& y) {
  if (x.mode_sizes() != y.mode_sizes()) throw std::invalid_argument("tt_add: mode mismatch");
  const int d = x.order();
  if (d == 1) {
    TtVector out = x;
    for (size_t i = 0; i < out.cores[0].v.size(); ++i) out.cores[0].v[i] += y.cores[0].v[i];
    return out;
  }
  TtVector out;
  for (int k = 0; k < d; ++k) {
    const auto& g = x.cores[k];
    const auto& h = y.cores[k];
    const int r0 = (k == 0) ? 1 : g.r0 + h.r0;
    const int r1 = (k == d - 1) ? 1 : g.r1 + h.r1;
    TtCore3 c(r0, g.n, r1);
    for (int a = 0; a < g.r0; ++a)
      for (int i = 0; i < g.n; ++i)
        for (int b = 0; b < g.r1; ++b) c.at(a, i, b) = g.at(a, i, b);
    const int ao = (k == 0) ? 0 : g.r0;
    const int bo = (k == d - 1) ? 0 : g.r1;
    for (int a = 0; a < h.r0; ++a)
      for (int i = 0; i < h.n; ++i)
        for (int b = 0; b < h.r1; ++b) c.at(ao + a, i, bo + b) += h.at(a, i, b);
    out.cores.push_back(std::move(c));
  }
  return out;
}

TtVector tt_scale(const TtVector& x, double c) {
  if (!std::isfinite(c)) throw std::invalid_argument("tt_scale: non-finite scalar");
  TtVector out = x;
  for (double& v : out.cores[0].v) v *= c;
  return out;
}

TtVector tt_hadamard(const TtVector& x, const TtVector& y) {
  if (x.mode_sizes() != y.mode_sizes()) throw std::invalid_argument("tt_hadamard: mode mismatch");
  TtVector out;
  for (int k = 0; k < x.order(); ++k) {
    const auto& g = x.cores[k];
    const auto& h = y.cores[k];
    TtCore3 c(g.r0 * h.r0, g.n, g.r1 * h.r1);
    for (int a1 = 0; a1 < g.r0; ++a1)
      for (int a2 = 0; a2 < h.r0; ++a2)
        for (int i = 0; i < g.n; ++i)
          for (int b1 = 0; b1 < g.r1; ++b1)
            for (int b2 = 0; b2 < h.r1; ++b2)
              c.at(a1 * h.r0 + a2, i, b1 * h.r1 + b2) = g.at(a1, i, b1) * h.at(a2, i, b2);
    out.cores.push_back(std::move(c));
  }
  return out;
}

TtVector tt_matvec(const TtOperator& a, const TtVector& x) {
  if (a.col_sizes() != x.mode_sizes()) throw std::invalid_argument("tt_matvec: size mismatch");
  TtVector out;
  for (int k = 0; k < x.order(); ++k) {
    const auto& mc = a.cores[k];
    const auto& g = x.cores[k];
    TtCore3 c(mc.r0 * g.r0, mc.n, mc.r1 * g.r1);
    for (int al = 0; al < mc.r0; ++al)
      for (int bl = 0; bl < g.r0; ++bl)
        for (int i = 0; i < mc.n; ++i)
          for (int ar = 0; ar < mc.r1; ++ar)
            for (int br = 0; br < g.r1; ++br) {
              double s = 0.0;
              for (int j = 0; j < mc.m; ++j) s += mc.at(al, i, j, ar) * g.at(bl, j, br);
              c.at(al * g.r0 + bl, i, ar * g.r1 + br) = s;
            }
    out.cores.push_back(std::move(c));
  }
  return out;
}

TtOperator tt_matmat(const TtOperator& a, const TtOperator& b) {
  if (a.col_sizes() != b.row_sizes()) throw std::invalid_argument("tt_matmat: size mismatch");
  TtOperator out;
  for (int k = 0; k < a.order(); ++k) {
    const auto& ac = a.cores[k];
    const auto& bc = b.cores[k];
    TtCore4 c(ac.r0 * bc.r0, ac.n, bc.m, ac.r1 * bc.r1);
    for (int al = 0; al < ac.r0; ++al)
      for (int bl = 0; bl < bc.r0; ++bl)
        for (int i = 0; i < ac.n; ++i)
          for (int j = 0; j < bc.m; ++j)
            for (int ar = 0; ar < ac.r1; ++ar)
              for (int br = 0; br < bc.r1; ++br) {
                double s = 0.0;
                for (int t = 0; t < ac.m; ++t) s += ac.at(al, i, t, ar) * bc.at(bl, t, j, br);
                c.at(al * bc.r0 + bl, i, j, ar * bc.r1 + br) = s;
              }
    out.cores.push_back(std::move(c));
  }
  return out;
}

TtVector tt_kron(const TtVector& x, const TtVector& y) {
  TtVector out = x;
  out.cores.insert(out.cores.end(), y.cores.begin(), y.cores.end());
  return out;
}

TtOperator tt_kron(const TtOperator& a, const TtOperator& b) {
  TtOperator out = a;
  out.cores.insert(out.cores.end(), b.cores.begin(), b.cores.end());
  return out;
}

TtOperator tt_op_add(const TtOperator& a, const TtOperator& b) {
  if (a.row_sizes() != b.row_sizes() || a.col_sizes() != b.col_sizes())
    throw std::invalid_argument("tt_op_add: size mismatch");
  TtVector sum = tt_add(op_as_vector(a), op_as_vector(b));
  return vector_as_op(sum, a.row_sizes(), a.col_sizes());
}

TtOperator tt_op_scale(const TtOperator& a, double c) {
  TtOperator out = a;
  for (double& v : out.cores[0].v) v *= c;
  return out;
}

TtOperator tt_diag(const TtVector& x) {
  TtOperator out;
  for (const auto& g : x.cores) {
    TtCore4 c(g.r0, g.n, g.n, g.r1);
    for (int a = 0; a < g.r0; ++a)
      for (int i = 0; i < g.n; ++i)
        for (int b = 0; b < g.r1; ++b) c.at(a, i, i, b) = g.at(a, i, b);
    out.cores.push_back(std::move(c));
  }
  return out;
}

TtOperator tt_transpose(const TtOperator& a) {
  TtOperator out;
  for (const auto& c : a.cores) {
    TtCore4 t(c.r0, c.m, c.n, c.r1);
    for (int al = 0; al < c.r0; ++al)
      for (int i = 0; i < c.n; ++i)
        for (int j = 0; j < c.m; ++j)
          for (int ar = 0; ar < c.r1; ++ar) t.at(al, j, i, ar) = c.at(al, i, j, ar);
    out.cores.push_back(std::move(t));
  }
  return out;
}

double tt_dot(const TtVector& x, const TtVector& y) {
  if (x.mode_sizes() != y.mode_sizes()) throw std::invalid_argument("tt_dot: mode mismatch");
  Matrix env = Matrix::Ones(1, 1);
  for (int k = 0; k < x.order(); ++k) {
    const auto& g = x.cores[k];
    const auto& h = y.cores[k];
    Matrix next = Matrix::Zero(g.r1, h.r1);
    for (int i = 0; i < g.n; ++i) {
      // slice maps: X_i (r0 x r1) with row stride n*r1
      Matrix xi(g.r0, g.r1), yi(h.r0, h.r1);
      for (int a = 0; a < g.r0; ++a)
        for (int b = 0; b < g.r1; ++b) xi(a, b) = g.at(a, i, b);
      for (int a = 0; a < h.r0; ++a)
        for (int b = 0; b < h.r1; ++b) yi(a, b) = h.at(a, i, b);
      next.noalias() += xi.transpose() * env * yi;
    }
    env = std::move(next);
  }
  return env(0, 0);
}

namespace {

// Left-orthogonalize all cores except the last; returns nothing, mutates x.
void left_orthogonalize(TtVector& x) {
  const int d = x.order();
  for (int k = 0; k < d - 1; ++k) {
    auto& c = x.cores[k];
    MapRM m(c.v.data(), static_cast<Eigen::Index>(c.r0) * c.n, c.r1);
    auto [q, r] = qr(m);
    const int rk = static_cast<int>(q.cols());
    TtCore3 nc(c.r0, c.n, rk);
    MapRM(nc.v.data(), static_cast<Eigen::Index>(c.r0) * c.n, rk) = q;
    // push r into the next core
    auto& nx = x.cores[k + 1];
    CMapRM right(nx.v.data(), nx.r0, static_cast<Eigen::Index>(nx.n) * nx.r1);
    RowMat merged = r * right;
    TtCore3 nn(rk, nx.n, nx.r1);
    std::memcpy(nn.v.data(), merged.data(), sizeof(double) * merged.size());
    x.cores[k] = std::move(nc);
    x.cores[k + 1] = std::move(nn);
  }
}

}  // namespace

double tt_norm(const TtVector& x) {
  TtVector y = x;
  left_orthogonalize(y);
  const auto& last = y.cores.back();
  return CMapRM(last.v.data(), 1, last.v.size()).norm();
}

TtVector tt_round(const TtVector& x, double eps, int chi_max) {
  x.check_valid();
  const int d = x.order();
  TtVector y = x;
  if (d == 1) return y;

  // right-to-left orthogonalization sweep
  for (int k = d - 1; k >= 1; --k) {
    auto& c = y.cores[k];
    CMapRM m(c.v.data(), c.r0, static_cast<Eigen::Index>(c.n) * c.r1);
    auto [q, r] = qr(Matrix(m.transpose()));
    const int rk = static_cast<int>(q.cols());
    TtCore3 nc(rk, c.n, c.r1);
    MapRM(nc.v.data(), rk, static_cast<Eigen::Index>(c.n) * c.r1) = q.transpose();
    auto& px = y.cores[k - 1];
    CMapRM left(px.v.data(), static_cast<Eigen::Index>(px.r0) * px.n, px.r1);
    RowMat merged = left * r.transpose();
    TtCore3 np(px.r0, px.n, rk);
    std::memcpy(np.v.data(), merged.data(), sizeof(double) * merged.size());
    y.cores[k] = std::move(nc);
    y.cores[k - 1] = std::move(np);
  }

  const double norm = CMapRM(y.cores[0].v.data(), 1, y.cores[0].v.size()).norm();
  const double delta = (norm > 0.0) ? eps * norm / std::sqrt(d - 1) : 0.0;

  // left-to-right truncation sweep
  for (int k = 0; k < d - 1; ++k) {
    auto& c = y.cores[k];
    CMapRM m(c.v.data(), static_cast<Eigen::Index>(c.r0) * c.n, c.r1);
    SvdResult dec = svd(m);
    int rk = truncation_rank_abs(dec.s, delta);
    rk = std::min({rk, chi_max, static_cast<int>(dec.s.size())});
    TtCore3 nc(c.r0, c.n, rk);
    MapRM(nc.v.data(), static_cast<Eigen::Index>(c.r0) * c.n, rk) = dec.u.leftCols(rk);
    RowMat carry = dec.s.head(rk).asDiagonal() * dec.vt.topRows(rk);
    auto& nx = y.cores[k + 1];
    CMapRM right(nx.v.data(), nx.r0, static_cast<Eigen::Index>(nx.n) * nx.r1);
    RowMat merged = carry * right;
    TtCore3 nn(rk, nx.n, nx.r1);
    std::memcpy(nn.v.data(), merged.data(), sizeof(double) * merged.size());
    y.cores[k] = std::move(nc);
    y.cores[k + 1] = std::move(nn);
  }
  return y;
}

TtOperator tt_op_round(const TtOperator& a, double eps, int chi_max) {
  TtVector flat = op_as_vector(a);
  flat = tt_round(flat, eps, chi_max);
  return vector_as_op(flat, a.row_sizes(), a.col_sizes());
}

TtVector tt_reverse(const TtVector& x) {
  TtVector out;
  for (int k = x.order() - 1; k >= 0; --k) {
    const auto& c = x.cores[k];
    TtCore3 t(c.r1, c.n, c.r0);
    for (int a = 0; a < c.r0; ++a)
      for (int i = 0; i < c.n; ++i)
        for (int b = 0; b < c.r1; ++b) t.at(b, i, a) = c.at(a, i, b);
    out.cores.push_back(std::move(t));
  }
  return out;
}

TtOperator tt_reverse(const TtOperator& x) {
  TtOperator out;
  for (int k = x.order() - 1; k >= 0; --k) {
    const auto& c = x.cores[k];
    TtCore4 t(c.r1, c.n, c.m, c.r0);
    for (int a = 0; a < c.r0; ++a)
      for (int i = 0; i < c.n; ++i)
        for (int j = 0; j < c.m; ++j)
          for (int b = 0; b < c.r1; ++b) t.at(b, i, j, a) = c.at(a, i, j, b);
    out.cores.push_back(std::move(t));
  }
  return out;
}

// ---- QTT folding helpers ----------------------------------------------------------

std::vector<double> qtt_fold(const std::vector<double>& vec) {
  const int q = log2_exact(static_cast<std::int64_t>(vec.size()), "qtt_fold");
  std::vector<double> full(vec.size());
  for (std::int64_t j = 0; j < static_cast<std::int64_t>(vec.size()); ++j) full[j] = vec[bitrev(j, q)];
  return full;
}

std::vector<double> qtt_unfold(const std::vector<double>& full) {
  const int q = log2_exact(static_cast<std::int64_t>(full.size()), "qtt_unfold");
  std::vector<double> vec(full.size());
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(full.size()); ++i) vec[i] = full[bitrev(i, q)];
  return vec;
}

TtVector qtt_from_vector(const std::vector<double>& vec, double eps) {
  const int q = log2_exact(static_cast<std::int64_t>(vec.size()), "qtt_from_vector");
  return tt_from_full(qtt_fold(vec), std::vector<int>(q, 2), eps);
}

std::vector<double> qtt_to_vector(const TtVector& x, std::int64_t size_cap) {
  return qtt_unfold(tt_to_full(x, size_cap));
}

Vector qtt_to_eigen(const TtVector& x, std::int64_t size_cap) {
  std::vector<double> v = qtt_to_vector(x, size_cap);
  return Eigen::Map<const Vector>(v.data(), v.size());
}

Matrix qtt_op_to_matrix(const TtOperator& a, std::int64_t size_cap) {
  Matrix m = tt_op_to_dense(a, size_cap);
  const int qr_ = log2_exact(m.rows(), "qtt_op_to_matrix rows");
  const int qc = log2_exact(m.cols(), "qtt_op_to_matrix cols");
  Matrix out(m.rows(), m.cols());
  for (std::int64_t r = 0; r < m.rows(); ++r)
    for (std::int64_t c = 0; c < m.cols(); ++c) out(bitrev(r, qr_), bitrev(c, qc)) = m(r, c);
  return out;
}

TtOperator qtt_op_from_matrix(const Matrix& m, double eps) {
  const int q = log2_exact(m.rows(), "qtt_op_from_matrix");
  if (m.cols() != m.rows()) throw std::invalid_argument("qtt_op_from_matrix: square only");
  Matrix perm(m.rows(), m.cols());
  for (std::int64_t r = 0; r < m.rows(); ++r)
    for (std::int64_t c = 0; c < m.cols(); ++c) perm(r, c) = m(bitrev(r, q), bitrev(c, q));
  return tt_op_from_dense(perm, std::vector<int>(q, 2), std::vector<int>(q, 2), eps);
}

double qtt_entry(const TtVector& x, std::int64_t index) {
  Eigen::RowVectorXd acc = Eigen::RowVectorXd::Ones(1);
  for (int k = 0; k < x.order(); ++k) {
    const auto& c = x.cores[k];
    const int bit = static_cast<int>((index >> k) & 1);
    Matrix slice(c.r0, c.r1);
    for (int a = 0; a < c.r0; ++a)
      for (int b = 0; b < c.r1; ++b) slice(a, b) = c.at(a, bit, b);
    acc = acc * slice;
  }
  return acc(0);
}

}  // namespace ttst
