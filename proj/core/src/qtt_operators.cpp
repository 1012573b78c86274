#include "ttst/qtt_operators.hpp"

#include <stdexcept>
#include <vector>

namespace ttst {
namespace {

using Block = Eigen::Matrix2d;

Block blk(double a00, double a01, double a10, double a11) {
  Block b;
  b << a00, a01, a10, a11;
  return b;
}

const Block kI = blk(1, 0, 0, 1);
const Block kJ = blk(0, 1, 0, 0);
const Block kJp = blk(0, 0, 1, 0);
const Block kI1 = blk(1, 0, 0, 0);
const Block kI2 = blk(0, 0, 0, 1);

void set_block(TtCore4& c, int a, int b, const Block& m) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c.at(a, i, j, b) = m(i, j);
}

/// Assemble the chain first (1 x r) |> middle^(n-2) (r x r) |> last (r x 1), where the
/// chain digits run most-significant first, then reverse the cores to match the
/// library's least-significant-first folding convention.
TtOperator chain(int n, const std::vector<Block>& first, const std::vector<std::vector<Block>>& middle,
                 const std::vector<Block>& last) {
  if (n < 2) throw std::invalid_argument("qtt operator chain needs n >= 2");
  const int r = static_cast<int>(first.size());
  TtOperator a;
  TtCore4 c0(1, 2, 2, r);
  for (int b = 0; b < r; ++b) set_block(c0, 0, b, first[b]);
  a.cores.push_back(std::move(c0));
  for (int k = 0; k < n - 2; ++k) {
    TtCore4 cm(r, 2, 2, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) set_block(cm, i, j, middle[i][j]);
    a.cores.push_back(std::move(cm));
  }
  TtCore4 cn(r, 2, 2, 1);
  for (int i = 0; i < r; ++i) set_block(cn, i, 0, last[i]);
  a.cores.push_back(std::move(cn));
  return tt_reverse(a);
}

const std::vector<Block> kToeFirst = {kI1, kI, kJp, kJ, kI2};
const std::vector<std::vector<Block>> kToeMiddle = {
    {kI1, Block::Zero(), Block::Zero(), Block::Zero(), Block::Zero()},
    {Block::Zero(), kI, kJp, kJ, Block::Zero()},
    {Block::Zero(), Block::Zero(), kJ, Block::Zero(), Block::Zero()},
    {Block::Zero(), Block::Zero(), Block::Zero(), kJp, Block::Zero()},
    {Block::Zero(), Block::Zero(), Block::Zero(), Block::Zero(), kI2}};
const std::vector<Block> kCircFirst = {kI, kJp + kJ, kJ + kJp};
const std::vector<std::vector<Block>> kCircMiddle = {{kI, kJp, kJ},
                                                     {Block::Zero(), kJ, Block::Zero()},
                                                     {Block::Zero(), Block::Zero(), kJp}};

}  // namespace

double BoundaryCondition::a() const {
  switch (kind) {
    case BcKind::dirichlet: return -1.0;
    case BcKind::neumann: return 1.0;
    default: return 0.0;
  }
}

double BoundaryCondition::b(double dn) const {
  switch (kind) {
    case BcKind::dirichlet: return 2.0 * value;
    case BcKind::neumann: return value * dn;
    default: return 0.0;
  }
}

void GridSpec::check_valid() const {
  if (q_x < 2 || q_t < 2) throw std::invalid_argument("grid exponents must be >= 2");
  if (!(x_b > x_a)) throw std::invalid_argument("empty spatial domain");
  if (!(T > 0)) throw std::invalid_argument("nonpositive horizon");
}

TtOperator qtt_toeplitz3(int n, double l, double d, double u, double a1, double a2) {
  // corner entries are a1*l + d and a2*u + d; the I-path already carries d
  std::vector<Block> last = {a1 * l * kI1, d * kI + u * kJ + l * kJp, l * kJ, u * kJp, a2 * u * kI2};
  return chain(n, kToeFirst, kToeMiddle, last);
}

TtOperator qtt_circulant3(int n, double l, double d, double u) {
  std::vector<Block> last = {d * kI + u * kJ + l * kJp, l * kJ, u * kJp};
  return chain(n, kCircFirst, kCircMiddle, last);
}

TtOperator qtt_penta5(int n, double l2, double l1, double d, double u1, double u2, std::array<double, 3> c1,
                      std::array<double, 3> c2) {
  std::vector<Block> last = {c1[0] * kI1 + c1[1] * kJ + c1[2] * kJp, l1 * kJp + d * kI + u1 * kJ,
                             l1 * kJ + l2 * kI, u1 * kJp + u2 * kI, c2[0] * kI2 + c2[1] * kJp + c2[2] * kJ};
  return chain(n, kToeFirst, kToeMiddle, last);
}

TtOperator qtt_circulant5(int n, double l2, double l1, double d, double u1, double u2) {
  std::vector<Block> last = {l1 * kJp + d * kI + u1 * kJ, l1 * kJ + l2 * kI, u1 * kJp + u2 * kI};
  return chain(n, kCircFirst, kCircMiddle, last);
}

TtOperator qtt_identity(int n) {
  if (n < 1) throw std::invalid_argument("qtt_identity: n >= 1 required");
  TtOperator a;
  for (int k = 0; k < n; ++k) {
    TtCore4 c(1, 2, 2, 1);
    set_block(c, 0, 0, kI);
    a.cores.push_back(std::move(c));
  }
  return a;
}

TtVector qtt_ones(int n) {
  if (n < 1) throw std::invalid_argument("qtt_ones: n >= 1 required");
  return tt_constant(std::vector<int>(n, 2), 1.0);
}

TtVector qtt_basis(int n, std::int64_t k) {
  if (n < 1) throw std::invalid_argument("qtt_basis: n >= 1 required");
  if (k < 1 || k > (std::int64_t{1} << n)) throw std::out_of_range("qtt_basis: index out of range");
  const std::int64_t idx = k - 1;
  TtVector x;
  for (int j = 0; j < n; ++j) {
    TtCore3 c(1, 2, 1);
    c.at(0, static_cast<int>((idx >> j) & 1), 0) = 1.0;
    x.cores.push_back(std::move(c));
  }
  return x;
}

TtOperator build_time_operator(TimeOp name, int q_t) {
  switch (name) {
    case TimeOp::d_t: return qtt_toeplitz3(q_t, -1, 1, 0, 0, 0);
    case TimeOp::j_t: return tt_op_scale(qtt_toeplitz3(q_t, 1, 1, 0, 0, 0), 0.5);
    case TimeOp::k_t: return tt_op_scale(qtt_penta5(q_t, 1, 2, 1, 0, 0), 0.25);
    case TimeOp::d_tt: return qtt_penta5(q_t, 1, -2, 1, 0, 0);
  }
  throw std::invalid_argument("unknown time operator");
}

TtOperator build_space_operator(SpaceOp name, int q_x, double dx, const BoundaryCondition& left,
                                const BoundaryCondition& right) {
  if (!(dx > 0)) throw std::invalid_argument("dx must be positive");
  const bool periodic = left.kind == BcKind::periodic || right.kind == BcKind::periodic;
  if (periodic && left.kind != right.kind)
    throw std::invalid_argument("periodic boundary applies to both ends");
  switch (name) {
    case SpaceOp::d_x: {
      const double s = 1.0 / (2.0 * dx);
      TtOperator a = periodic ? qtt_circulant3(q_x, -1, 0, 1)
                              : qtt_toeplitz3(q_x, -1, 0, 1, left.a(), right.a());
      return tt_op_scale(a, s);
    }
    case SpaceOp::d_xx: {
      const double s = 1.0 / (dx * dx);
      TtOperator a = periodic ? qtt_circulant3(q_x, 1, -2, 1)
                              : qtt_toeplitz3(q_x, 1, -2, 1, left.a(), right.a());
      return tt_op_scale(a, s);
    }
    case SpaceOp::d_xxx:
      return tt_op_scale(qtt_circulant5(q_x, -1, 2, 0, -2, 1), 1.0 / (2.0 * dx * dx * dx));
  }
  throw std::invalid_argument("unknown space operator");
}

TtVector boundary_source(const BoundaryCondition& left, const BoundaryCondition& right, int q_x, double dx,
                         SpaceOp op) {
  const std::int64_t nx = std::int64_t{1} << q_x;
  double s1 = 0, s2 = 0;
  switch (op) {
    case SpaceOp::d_x:
      s1 = -left.b(dx) / (2.0 * dx);
      s2 = right.b(dx) / (2.0 * dx);
      break;
    case SpaceOp::d_xx:
      s1 = left.b(dx) / (dx * dx);
      s2 = right.b(dx) / (dx * dx);
      break;
    case SpaceOp::d_xxx:
      break;  // circulant, no ghost elimination
  }
  TtVector g = tt_scale(qtt_basis(q_x, 1), s1);
  if (s2 != 0.0) g = tt_add(g, tt_scale(qtt_basis(q_x, nx), s2));
  return tt_round(g, 1e-15);
}

}  // namespace ttst
