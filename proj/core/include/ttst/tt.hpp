#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "ttst/dense_kernels.hpp"

namespace ttst {

inline constexpr int kNoRankCap = std::numeric_limits<int>::max();

/// 3-index TT core of shape (r0, n, r1), row-major: entry (a,i,b) at (a*n+i)*r1+b.
struct TtCore3 {
  int r0 = 1, n = 1, r1 = 1;
  std::vector<double> v;

  TtCore3() = default;
  TtCore3(int r0_, int n_, int r1_) : r0(r0_), n(n_), r1(r1_), v(static_cast<size_t>(r0_) * n_ * r1_, 0.0) {}

  double& at(int a, int i, int b) { return v[(static_cast<size_t>(a) * n + i) * r1 + b]; }
  double at(int a, int i, int b) const { return v[(static_cast<size_t>(a) * n + i) * r1 + b]; }
};

/// 4-index TT-matrix core of shape (r0, n, m, r1); entry (a,i,j,b) at ((a*n+i)*m+j)*r1+b.
struct TtCore4 {
  int r0 = 1, n = 1, m = 1, r1 = 1;
  std::vector<double> v;

  TtCore4() = default;
  TtCore4(int r0_, int n_, int m_, int r1_)
      : r0(r0_), n(n_), m(m_), r1(r1_), v(static_cast<size_t>(r0_) * n_ * m_ * r1_, 0.0) {}

  double& at(int a, int i, int j, int b) { return v[((static_cast<size_t>(a) * n + i) * m + j) * r1 + b]; }
  double at(int a, int i, int j, int b) const { return v[((static_cast<size_t>(a) * n + i) * m + j) * r1 + b]; }
};

/// Tensor train with open boundary ranks r_0 = r_d = 1.
struct TtVector {
  std::vector<TtCore3> cores;

  int order() const { return static_cast<int>(cores.size()); }
  std::vector<int> mode_sizes() const;
  std::vector<int> ranks() const;  // length d+1, r_0 .. r_d
  int max_rank() const;
  std::int64_t total_size() const;  // product of mode sizes
  std::int64_t storage_size() const;  // sum over cores of r0*n*r1
  void check_valid() const;           // bond consistency + finiteness
};

/// TT-matrix (matrix product operator).
struct TtOperator {
  std::vector<TtCore4> cores;

  int order() const { return static_cast<int>(cores.size()); }
  std::vector<int> row_sizes() const;
  std::vector<int> col_sizes() const;
  std::vector<int> ranks() const;
  int max_rank() const;
  void check_valid() const;
};

// ---- construction / densification -------------------------------------------------

/// TT-SVD of a dense row-major array (first mode slowest). Relative accuracy eps.
TtVector tt_from_full(const std::vector<double>& data, const std::vector<int>& modes, double eps);

/// Dense row-major reconstruction; refuses tensors above size_cap entries.
std::vector<double> tt_to_full(const TtVector& x, std::int64_t size_cap = (std::int64_t{1} << 20));

/// Dense (N x M) reconstruction of an operator, N = prod(row_sizes), M = prod(col_sizes).
Matrix tt_op_to_dense(const TtOperator& a, std::int64_t size_cap = (std::int64_t{1} << 22));

/// TT-matrix from a dense matrix, with explicit row/column mode factorizations.
TtOperator tt_op_from_dense(const Matrix& m, const std::vector<int>& row_modes,
                            const std::vector<int>& col_modes, double eps);

/// Rank-1 constant tensor with the given modes and value.
TtVector tt_constant(const std::vector<int>& modes, double value);

// ---- arithmetic -------------------------------------------------------------------

TtVector tt_add(const TtVector& x, const TtVector& y);
TtVector tt_scale(const TtVector& x, double c);
TtVector tt_hadamard(const TtVector& x, const TtVector& y);
TtVector tt_matvec(const TtOperator& a, const TtVector& x);
TtOperator tt_matmat(const TtOperator& a, const TtOperator& b);
TtVector tt_kron(const TtVector& x, const TtVector& y);     // x indices slowest
TtOperator tt_kron(const TtOperator& a, const TtOperator& b);
TtOperator tt_op_add(const TtOperator& a, const TtOperator& b);
TtOperator tt_op_scale(const TtOperator& a, double c);
TtOperator tt_diag(const TtVector& x);
TtOperator tt_transpose(const TtOperator& a);

double tt_norm(const TtVector& x);
double tt_dot(const TtVector& x, const TtVector& y);

/// Orthogonalization + truncated-SVD rounding: right-to-left QR sweep then
/// left-to-right SVD truncation at relative tolerance eps, hard-capped at chi_max.
TtVector tt_round(const TtVector& x, double eps, int chi_max = kNoRankCap);
TtOperator tt_op_round(const TtOperator& a, double eps, int chi_max = kNoRankCap);

/// Reverse the core chain (bond indices swapped). The represented tensor has
/// its mode order reversed; used to convert between digit-order conventions.
TtVector tt_reverse(const TtVector& x);
TtOperator tt_reverse(const TtOperator& a);

// ---- QTT folding helpers (little-endian digit order: mode k <-> bit k-1) ----------

/// Fold a length-2^q vector into the dense row-major 2x2x...x2 array whose mode k
/// carries bit k-1 of the vector index (least significant bit first).
std::vector<double> qtt_fold(const std::vector<double>& vec);
std::vector<double> qtt_unfold(const std::vector<double>& full);

/// tt_from_full(qtt_fold(vec)) convenience.
TtVector qtt_from_vector(const std::vector<double>& vec, double eps);
std::vector<double> qtt_to_vector(const TtVector& x, std::int64_t size_cap = (std::int64_t{1} << 20));
Vector qtt_to_eigen(const TtVector& x, std::int64_t size_cap = (std::int64_t{1} << 20));

/// Dense matrix of a QTT operator under the same little-endian digit convention.
Matrix qtt_op_to_matrix(const TtOperator& a, std::int64_t size_cap = (std::int64_t{1} << 22));
TtOperator qtt_op_from_matrix(const Matrix& m, double eps);

/// Single entry of a QTT vector (index by its integer position), O(q r^2).
double qtt_entry(const TtVector& x, std::int64_t index);

}  // namespace ttst
