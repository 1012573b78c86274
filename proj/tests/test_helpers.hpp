#pragma once

#include <random>
#include <vector>

#include "ttst/tt.hpp"

namespace ttst::testing {

inline std::mt19937& rng() {
  static std::mt19937 gen(20240811u);
  return gen;
}

inline std::vector<double> random_vector(std::int64_t n) {
  std::normal_distribution<double> dist;
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng());
  return v;
}

/// Random TT with the given modes and internal rank (clipped to feasible values).
inline TtVector random_tt(const std::vector<int>& modes, int rank) {
  const int d = static_cast<int>(modes.size());
  std::normal_distribution<double> dist;
  TtVector x;
  int r_prev = 1;
  std::int64_t left = 1, right = 1;
  for (int n : modes) right *= n;
  for (int k = 0; k < d; ++k) {
    left *= modes[k];
    right /= modes[k];
    const int r_next = (k == d - 1) ? 1 : static_cast<int>(std::min<std::int64_t>({rank, left, right}));
    TtCore3 c(r_prev, modes[k], r_next);
    for (auto& v : c.v) v = dist(rng());
    x.cores.push_back(std::move(c));
    r_prev = r_next;
  }
  return x;
}

inline TtOperator random_tt_op(const std::vector<int>& rows, const std::vector<int>& cols, int rank) {
  const int d = static_cast<int>(rows.size());
  std::normal_distribution<double> dist;
  TtOperator a;
  int r_prev = 1;
  for (int k = 0; k < d; ++k) {
    const int r_next = (k == d - 1) ? 1 : rank;
    TtCore4 c(r_prev, rows[k], cols[k], r_next);
    for (auto& v : c.v) v = dist(rng());
    a.cores.push_back(std::move(c));
    r_prev = r_next;
  }
  return a;
}

inline double rel_err(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return den > 0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace ttst::testing
