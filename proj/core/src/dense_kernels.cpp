#include "ttst/dense_kernels.hpp"

#include <stdexcept>
#include <string>

namespace ttst {

SvdResult svd(const Matrix& m) {
  if (!m.allFinite()) {
    throw std::invalid_argument("svd: non-finite input (" + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()) + ")");
  }
  Eigen::BDCSVD<Matrix> dec(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (dec.info() == Eigen::Success) {
    SvdResult out{dec.matrixU(), dec.singularValues(), dec.matrixV().transpose()};
    // BDCSVD can silently drop singular values on some rank-deficient inputs;
    // verify the reconstruction and fall back to the (slower, reliable) Jacobi SVD
    const double resid = (m - out.u * out.s.asDiagonal() * out.vt).norm();
    if (resid <= 1e-10 * (1.0 + m.norm())) return out;
  }
  Eigen::JacobiSVD<Matrix> jac(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (jac.info() != Eigen::Success) {
    throw std::runtime_error("svd: did not converge for " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + " matrix");
  }
  return {jac.matrixU(), jac.singularValues(), jac.matrixV().transpose()};
}

std::pair<Matrix, Matrix> qr(const Matrix& m) {
  if (!m.allFinite()) {
    throw std::invalid_argument("qr: non-finite input");
  }
  Eigen::HouseholderQR<Matrix> dec(m);
  const Eigen::Index k = std::min(m.rows(), m.cols());
  Matrix q = dec.householderQ() * Matrix::Identity(m.rows(), k);
  Matrix r = dec.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  return {std::move(q), std::move(r)};
}

Vector tikhonov_solve(const Matrix& a, const Vector& b, double alpha) {
  if (a.rows() != b.size()) {
    throw std::invalid_argument("tikhonov_solve: dimension mismatch");
  }
  SvdResult dec = svd(a);
  Vector ub = dec.u.transpose() * b;
  for (Eigen::Index i = 0; i < dec.s.size(); ++i) {
    const double s = dec.s[i];
    const double denom = s * s + alpha;
    ub[i] = (denom > 0.0) ? ub[i] * s / denom : 0.0;
  }
  return dec.vt.transpose() * ub;
}

int truncation_rank(const Vector& s, double eps) {
  return truncation_rank_abs(s, eps * s.norm());
}

int truncation_rank_abs(const Vector& s, double delta) {
  const int n = static_cast<int>(s.size());
  double tail = 0.0;
  int k = n;
  // grow the discarded tail from the smallest singular value upward
  for (int j = n - 1; j >= 1; --j) {
    tail += s[j] * s[j];
    if (tail > delta * delta) break;
    k = j;
  }
  return std::max(k, 1);
}

}  // namespace ttst
