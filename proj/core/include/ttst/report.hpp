#pragma once

#include <iosfwd>

#include "ttst/classical.hpp"
#include "ttst/multilevel.hpp"

namespace ttst {

enum class Method { sl, ml, ct };

std::string method_name(Method m);
Method parse_method(const std::string& s);

/// Spatial field at time node n (1-based): contract the time cores at the
/// binary digits of n-1.
TtVector extract_time_slice(const TtVector& U, const GridSpec& g, std::int64_t n);

struct L2Error {
  double absolute = 0.0;
  double relative = 0.0;
};

/// Discrete L2 error of a spatial slice against the analytic reference at
/// t_eval: (sum |u_i - u_ref(x_i)|^2 dx)^{1/2}, and its ratio to the reference
/// norm computed the same way.
L2Error l2_error(const std::vector<double>& u_slice, const ProblemSpec& p, const GridSpec& g,
                 double t_eval);
L2Error l2_error(const TtVector& U, const ProblemSpec& p, const GridSpec& g, double t_eval);
L2Error l2_error(const Matrix& u_ct, const ProblemSpec& p, const GridSpec& g, double t_eval);

/// Everything needed to run one case; per-benchmark defaults come from
/// default_config.
struct SolverConfig {
  Method method = Method::sl;
  SchemeId scheme = SchemeId::euler_m1;
  NewtonConfig newton;
  CompressionPolicy policy;
  CtConfig ct;
  int n_levels = 0;       // ml: 0 picks min(q_x, q_t) - level_offset
  int level_offset = 1;   // benchmark-specific hierarchy depth rule
};

SolverConfig default_config(const std::string& problem_name);

struct RunReport {
  std::string problem;
  std::string method;
  std::string scheme;
  int q_x = 0, q_t = 0;
  bool converged = false;
  bool failed = false;  // solver raised; row kept for the record
  std::string failure;
  int newton_iterations = 0;  // finest level for ml; max per step for ct
  double wall_time_seconds = 0.0;
  int max_rank = 1;
  double l2_abs = 0.0;
  double l2_rel = 0.0;
  std::vector<double> residual_history;
  std::string config_echo;
};

RunReport run_case(const std::string& problem_name, int q_x, int q_t, const SolverConfig& cfg);

struct Study {
  std::vector<RunReport> rows;
  double fitted_order = 0.0;  // least-squares slope of log(error) vs log(dt), converged rows
};

/// Run one method over a ladder of square grids (>= 3) and fit the temporal
/// order. Failed runs mark their row and are skipped in the fit.
Study convergence_study(const std::string& problem_name, const std::vector<int>& q_ladder,
                        const SolverConfig& cfg);

void write_csv(const std::vector<RunReport>& rows, std::ostream& os);
std::string render_table(const std::vector<RunReport>& rows);

}  // namespace ttst
