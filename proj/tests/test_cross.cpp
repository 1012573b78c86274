#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_helpers.hpp"
#include "ttst/cross.hpp"

using namespace ttst;
using namespace ttst::testing;

namespace {

CrossOptions force_cross(double eps, int chi = kNoRankCap) {
  CrossOptions opt;
  opt.eps = eps;
  opt.chi_max = chi;
  opt.dense_fallback_threshold = 1;  // never densify
  return opt;
}

std::vector<double> apply_dense(double (*f)(double), const TtVector& x) {
  auto d = tt_to_full(x);
  for (auto& v : d) v = f(v);
  return d;
}

}  // namespace

TEST_CASE("tt_entry matches dense lookup") {
  TtVector x = random_tt({2, 3, 2, 2}, 3);
  auto d = tt_to_full(x);
  CHECK(tt_entry(x, {0, 0, 0, 0}) == doctest::Approx(d[0]));
  CHECK(tt_entry(x, {1, 2, 0, 1}) == doctest::Approx(d[((1 * 3 + 2) * 2 + 0) * 2 + 1]));
}

TEST_CASE("sin of the zero tensor is zero") {
  TtVector z = tt_constant({2, 2, 2}, 0.0);
  TtVector y = tt_apply_elementwise([](double v) { return std::sin(v); }, z, 1e-10);
  CHECK(tt_norm(y) <= 1e-12);
}

TEST_CASE("sin of a constant tensor stays rank 1") {
  TtVector c = tt_constant(std::vector<int>(8, 2), 0.7);
  TtVector y = tt_apply_elementwise([](double v) { return std::sin(v); }, c, 1e-10);
  CHECK(y.max_rank() == 1);
  for (double v : tt_to_full(y)) CHECK(v == doctest::Approx(std::sin(0.7)));

  // same through the cross path
  TtVector yc = tt_apply_elementwise([](double v) { return std::sin(v); }, c, force_cross(1e-10));
  CHECK(yc.max_rank() == 1);
  for (double v : tt_to_full(yc)) CHECK(v == doctest::Approx(std::sin(0.7)));
}

TEST_CASE("sin of a kink profile, dense fallback path") {
  const int q = 8, N = 1 << q;
  std::vector<double> prof(N);
  for (int i = 0; i < N; ++i) {
    double x = -10.0 + 20.0 * i / N;
    prof[i] = 4.0 * std::atan(std::exp(x));
  }
  TtVector u = qtt_from_vector(prof, 1e-12);
  TtVector y = tt_apply_elementwise([](double v) { return std::sin(v); }, u, 1e-8);
  auto got = qtt_to_vector(y);
  std::vector<double> ref(N);
  for (int i = 0; i < N; ++i) ref[i] = std::sin(prof[i]);
  CHECK(rel_err(got, ref) <= 1e-7);
}

TEST_CASE("cross path reproduces smooth elementwise functions") {
  const int q = 10, N = 1 << q;
  std::vector<double> prof(N);
  for (int i = 0; i < N; ++i) {
    double x = -10.0 + 20.0 * i / N;
    prof[i] = 4.0 * std::atan(std::exp(x));
  }
  TtVector u = qtt_from_vector(prof, 1e-12);

  TtVector ysin = tt_apply_elementwise([](double v) { return std::sin(v); }, u, force_cross(1e-7));
  CHECK(rel_err(tt_to_full(ysin), apply_dense(std::sin, u)) <= 1e-6);

  TtVector ycos = tt_apply_elementwise([](double v) { return std::cos(v); }, u, force_cross(1e-7));
  CHECK(rel_err(tt_to_full(ycos), apply_dense(std::cos, u)) <= 1e-6);
}

TEST_CASE("cross on a generic low-rank tensor") {
  const int N = 1 << 9;
  std::vector<double> v(N);
  for (int i = 0; i < N; ++i) v[i] = std::sin(6.28 * i / N) + 0.3 * std::cos(19.0 * i / N);
  TtVector x = qtt_from_vector(v, 1e-12);
  TtVector y = tt_apply_elementwise([](double t) { return std::exp(t); }, x, force_cross(1e-7));
  CHECK(rel_err(tt_to_full(y), apply_dense(std::exp, x)) <= 1e-6);
}

TEST_CASE("cross failure reports the achieved error") {
  const int N = 1 << 9;
  std::vector<double> v = random_vector(N);
  TtVector x = qtt_from_vector(v, 1e-12);
  // a rough target with a tight budget and a hard rank cap cannot meet 1e-12
  CrossOptions opt = force_cross(1e-12, 2);
  opt.n_sweeps = 1;
  bool threw = false;
  try {
    tt_apply_elementwise([](double t) { return 1.0 / (1.1 + std::sin(17.0 * t)); }, x, opt);
  } catch (const CrossError& e) {
    threw = true;
    CHECK(e.achieved > 1e-12);
  }
  CHECK(threw);
}
