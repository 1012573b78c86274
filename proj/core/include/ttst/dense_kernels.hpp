#pragma once

#include <Eigen/Dense>
#include <utility>

namespace ttst {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct SvdResult {
  Matrix u;   // orthonormal columns
  Vector s;   // nonincreasing, nonnegative
  Matrix vt;  // orthonormal rows
};

/// Full thin SVD, M = U diag(s) Vt. Throws std::runtime_error if the
/// iteration fails to converge (message carries the matrix dimensions).
SvdResult svd(const Matrix& m);

/// Thin QR, M = Q R with Q orthonormal columns and R upper triangular.
std::pair<Matrix, Matrix> qr(const Matrix& m);

/// Tikhonov-regularized least squares via the SVD of a:
///   x = V (S^2 + alpha I)^-1 S U^T b.
/// alpha = 0 gives the minimum-norm least-squares solution.
Vector tikhonov_solve(const Matrix& a, const Vector& b, double alpha);

/// Smallest k such that sqrt(sum_{j>=k} s_j^2) <= eps * ||s||_2
/// (relative Frobenius tail rule). Returns at least 1 for nonzero s.
int truncation_rank(const Vector& s, double eps);

/// Same rule with an absolute tail threshold delta.
int truncation_rank_abs(const Vector& s, double delta);

}  // namespace ttst
