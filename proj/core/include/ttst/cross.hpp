#pragma once

#include <functional>
#include <stdexcept>

#include "ttst/tt.hpp"

namespace ttst {

/// Raised when the cross iteration cannot reach the requested tolerance.
struct CrossError : std::runtime_error {
  double achieved;
  explicit CrossError(double err);
};

struct CrossOptions {
  double eps = 1e-10;
  int chi_max = kNoRankCap;
  int n_sweeps = 6;
  /// Below this total size the tensor is densified and rebuilt directly.
  std::int64_t dense_fallback_threshold = std::int64_t{1} << 14;
  int validation_pivots = 256;
  unsigned seed = 1234567u;
};

/// Entrywise application of f to a TT tensor. Small tensors go through a dense
/// round trip; larger ones use a rank-adaptive two-site cross interpolation of
/// f(x) validated on a held-out random pivot set.
TtVector tt_apply_elementwise(const std::function<double(double)>& f, const TtVector& x,
                              const CrossOptions& opt);
TtVector tt_apply_elementwise(const std::function<double(double)>& f, const TtVector& x, double eps,
                              int chi_max = kNoRankCap);

/// Single entry of a TT tensor at a general multi-index.
double tt_entry(const TtVector& x, const std::vector<int>& idx);

}  // namespace ttst
