#include "ttst/report.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ttst {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::int64_t time_index(const GridSpec& g, double t_eval) {
  const std::int64_t n = std::llround(t_eval / g.dt());
  if (n < 1 || n > g.nt() || std::abs(static_cast<double>(n) * g.dt() - t_eval) > 1e-9 * g.T)
    throw std::invalid_argument("l2_error: t_eval is not a grid time node");
  return n;
}

std::string echo_config(const SolverConfig& c) {
  std::ostringstream os;
  os << "method=" << method_name(c.method) << " scheme=" << scheme_name(c.scheme)
     << " eps_res=" << c.newton.eps_res << " eps_tt=" << c.newton.eps_tt_floor
     << " eps_tt_init=" << c.newton.eps_tt_init << " chi=" << c.newton.chi
     << " s=" << c.newton.s << " n_iter=" << c.newton.n_iter
     << " eps_dmrg=" << c.newton.dmrg.eps_dmrg << " sweeps=" << c.newton.dmrg.n_sweeps
     << " chi_dmrg=" << c.newton.dmrg.chi << " alpha=" << c.newton.dmrg.alpha
     << " n_levels=" << c.n_levels << " level_offset=" << c.level_offset;
  return os.str();
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::sl: return "sl";
    case Method::ml: return "ml";
    case Method::ct: return "ct";
  }
  return "?";
}

Method parse_method(const std::string& s) {
  if (s == "sl") return Method::sl;
  if (s == "ml") return Method::ml;
  if (s == "ct") return Method::ct;
  throw std::invalid_argument("unknown method: " + s);
}

TtVector extract_time_slice(const TtVector& U, const GridSpec& g, std::int64_t n) {
  if (U.order() != g.q_t + g.q_x) throw std::invalid_argument("extract_time_slice: core count mismatch");
  if (n < 1 || n > g.nt()) throw std::out_of_range("extract_time_slice: time index out of range");
  const std::int64_t digits = n - 1;
  Eigen::RowVectorXd acc = Eigen::RowVectorXd::Ones(1);
  for (int k = 0; k < g.q_t; ++k) {
    const auto& c = U.cores[k];
    const int bit = static_cast<int>((digits >> k) & 1);
    Matrix slice(c.r0, c.r1);
    for (int a = 0; a < c.r0; ++a)
      for (int b = 0; b < c.r1; ++b) slice(a, b) = c.at(a, bit, b);
    acc = acc * slice;
  }
  TtVector out;
  const auto& first = U.cores[g.q_t];
  TtCore3 head(1, first.n, first.r1);
  for (int i = 0; i < first.n; ++i)
    for (int b = 0; b < first.r1; ++b) {
      double s = 0.0;
      for (int a = 0; a < first.r0; ++a) s += acc(a) * first.at(a, i, b);
      head.at(0, i, b) = s;
    }
  out.cores.push_back(std::move(head));
  for (int k = g.q_t + 1; k < U.order(); ++k) out.cores.push_back(U.cores[k]);
  return out;
}

L2Error l2_error(const std::vector<double>& u_slice, const ProblemSpec& p, const GridSpec& g,
                 double t_eval) {
  if (!p.analytic) throw std::invalid_argument("l2_error: no analytic reference for " + p.name);
  if (static_cast<std::int64_t>(u_slice.size()) != g.nx())
    throw std::invalid_argument("l2_error: slice length mismatch");
  double err2 = 0.0, ref2 = 0.0;
  for (std::int64_t i = 1; i <= g.nx(); ++i) {
    const double ref = analytic_solution(p, g.x_center(i), t_eval);
    const double e = u_slice[i - 1] - ref;
    err2 += e * e * g.dx();
    ref2 += ref * ref * g.dx();
  }
  L2Error out;
  out.absolute = std::sqrt(err2);
  out.relative = ref2 > 0.0 ? out.absolute / std::sqrt(ref2) : out.absolute;
  return out;
}

L2Error l2_error(const TtVector& U, const ProblemSpec& p, const GridSpec& g, double t_eval) {
  return l2_error(qtt_to_vector(extract_time_slice(U, g, time_index(g, t_eval))), p, g, t_eval);
}

L2Error l2_error(const Matrix& u_ct, const ProblemSpec& p, const GridSpec& g, double t_eval) {
  const std::int64_t n = time_index(g, t_eval);
  std::vector<double> slice(g.nx());
  for (std::int64_t i = 0; i < g.nx(); ++i) slice[i] = u_ct(n - 1, i);
  return l2_error(slice, p, g, t_eval);
}

SolverConfig default_config(const std::string& problem_name) {
  SolverConfig c;
  c.newton.dmrg.local_trunc = 1e-10;
  if (problem_name == "manufactured_m1") {
    c.scheme = SchemeId::crank_nicolson_m1;
    // cheap grids; compress well below the scheme error so the residual
    // target is reachable
    c.newton.eps_tt_init = 1e-8;
    c.newton.eps_tt_floor = 1e-8;
  } else if (problem_name == "sine_gordon_kink") {
    c.scheme = SchemeId::euler_m2;
    c.newton.eps_res = 5e-4;
    c.newton.eps_tt_init = 1e-3;  // adaptive compression, tightened on stagnation
    c.newton.eps_tt_floor = 1e-5;
    c.newton.n_iter = 40;
    c.newton.dmrg.eps_dmrg = 1e-3;
    c.newton.dmrg.n_sweeps = 2;
    c.newton.dmrg.chi = 18;
    c.newton.dmrg.alpha = 1e-6;
    c.level_offset = 2;
  } else if (problem_name == "kdv_soliton") {
    c.newton.eps_res = 1e-3;
    c.newton.s = 0.8;
    c.newton.chi = 13;
    c.newton.eps_tt_init = 1e-6;
    c.newton.eps_tt_floor = 1e-6;
    c.newton.dmrg.eps_dmrg = 1e-3;
    c.newton.dmrg.n_sweeps = 3;
    c.newton.dmrg.chi = 13;
    c.newton.dmrg.alpha = 1e-12;
    c.level_offset = 2;
  } else {
    c.newton.eps_res = 1e-5;
    c.newton.eps_tt_init = 1e-6;
    c.newton.eps_tt_floor = 1e-6;
    c.newton.dmrg.eps_dmrg = 1e-3;
    c.newton.dmrg.n_sweeps = 3;
    c.newton.dmrg.chi = 20;
    c.newton.dmrg.alpha = 1e-12;
    c.level_offset = 1;
    if (problem_name == "burgers_parabolic" || problem_name == "burgers_shock") {
      // rank budget; 12 is the smallest that still converges on the 2^7 grid
      c.newton.chi = 12;
      c.newton.dmrg.chi = 12;
    }
  }
  return c;
}

RunReport run_case(const std::string& problem_name, int q_x, int q_t, const SolverConfig& cfg) {
  RunReport rep;
  rep.problem = problem_name;
  rep.method = method_name(cfg.method);
  rep.scheme = scheme_name(cfg.scheme);
  rep.q_x = q_x;
  rep.q_t = q_t;
  rep.config_echo = echo_config(cfg);

  try {
    ProblemSpec p = make_problem(problem_name);
    GridSpec g{q_x, q_t, p.x_a, p.x_b, p.T};
    if (cfg.method == Method::ct) {
      const auto t0 = Clock::now();
      CtResult ct = ct_solve(p, g, cfg.scheme, cfg.ct);
      rep.wall_time_seconds = seconds_since(t0);
      rep.converged = true;
      rep.newton_iterations = ct.max_step_iterations();
      rep.max_rank = 1;
      if (p.analytic) {
        L2Error e = l2_error(ct.u, p, g, g.T);
        rep.l2_abs = e.absolute;
        rep.l2_rel = e.relative;
      }
      return rep;
    }

    TtVector u;
    if (cfg.method == Method::sl) {
      const double eps_a = cfg.policy.eps_tt_base > 0.0 ? compression_eps(cfg.policy, g)
                                                        : cfg.newton.eps_tt_floor;
      AssembledSystem sys = assemble(p, g, cfg.scheme, eps_a);
      TtVector guess = coarse_initial_guess(initial_condition_tt(p, g, eps_a), g.q_t);
      const auto t0 = Clock::now();
      NewtonResult res = newton_solve(sys, guess, cfg.newton, cfg.policy);
      rep.wall_time_seconds = seconds_since(t0);
      rep.converged = res.converged;
      rep.newton_iterations = res.iterations();
      for (const auto& it : res.trace.iters) rep.residual_history.push_back(it.residual_norm);
      if (res.trace.aborted) throw std::runtime_error(res.trace.abort_reason);
      u = std::move(res.u);
    } else {
      LevelPlan plan;
      plan.n_levels = cfg.n_levels > 0
                          ? cfg.n_levels
                          : std::max(1, std::min(q_x, q_t) - cfg.level_offset);
      const auto t0 = Clock::now();
      MultilevelResult res = multilevel_solve(p, g, cfg.scheme, plan, cfg.newton, cfg.policy);
      rep.wall_time_seconds = seconds_since(t0);
      rep.converged = res.converged;
      rep.newton_iterations = res.finest_iterations();
      for (const auto& it : res.levels.back().trace.iters) rep.residual_history.push_back(it.residual_norm);
      u = std::move(res.u);
    }
    rep.max_rank = u.max_rank();
    if (p.analytic) {
      L2Error e = l2_error(u, p, g, g.T);
      rep.l2_abs = e.absolute;
      rep.l2_rel = e.relative;
    }
  } catch (const std::exception& e) {
    rep.failed = true;
    rep.converged = false;
    rep.failure = e.what();
  }
  return rep;
}

Study convergence_study(const std::string& problem_name, const std::vector<int>& q_ladder,
                        const SolverConfig& cfg) {
  if (q_ladder.size() < 3)
    throw std::invalid_argument("convergence_study: need a ladder of at least 3 grids");
  Study st;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (int q : q_ladder) {
    RunReport rep = run_case(problem_name, q, q, cfg);
    if (!rep.failed && rep.converged && rep.l2_rel > 0.0) {
      const double x = -q * std::log(2.0);  // log(dt) up to the constant log T
      const double y = std::log(rep.l2_rel);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++m;
    }
    st.rows.push_back(std::move(rep));
  }
  if (m >= 2) st.fitted_order = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return st;
}

void write_csv(const std::vector<RunReport>& rows, std::ostream& os) {
  os << "run_id,problem,method,scheme,q_x,q_t,converged,failed,newton_iterations,"
        "wall_time_seconds,max_rank,l2_abs,l2_rel,residual_history,failure,config\n";
  int id = 0;
  for (const auto& r : rows) {
    std::ostringstream hist;
    for (size_t i = 0; i < r.residual_history.size(); ++i) {
      if (i) hist << ';';
      hist << std::setprecision(6) << r.residual_history[i];
    }
    os << id++ << ',' << r.problem << ',' << r.method << ',' << r.scheme << ',' << r.q_x << ','
       << r.q_t << ',' << (r.converged ? 1 : 0) << ',' << (r.failed ? 1 : 0) << ','
       << r.newton_iterations << ',' << std::setprecision(6) << r.wall_time_seconds << ','
       << r.max_rank << ',' << std::setprecision(10) << r.l2_abs << ',' << r.l2_rel << ','
       << csv_quote(hist.str()) << ',' << csv_quote(r.failure) << ',' << csv_quote(r.config_echo)
       << '\n';
  }
}

std::string render_table(const std::vector<RunReport>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(20) << "problem" << std::setw(6) << "meth" << std::setw(10) << "grid"
     << std::setw(12) << "rel error" << std::setw(7) << "iter" << std::setw(6) << "chi"
     << std::setw(12) << "time (s)" << "status\n";
  for (const auto& r : rows) {
    std::ostringstream grid;
    grid << "2^" << r.q_x << "x2^" << r.q_t;
    os << std::left << std::setw(20) << r.problem << std::setw(6) << r.method << std::setw(10)
       << grid.str() << std::setw(12) << std::setprecision(3) << std::scientific << r.l2_rel
       << std::setw(7) << r.newton_iterations << std::setw(6) << r.max_rank << std::setw(12)
       << std::fixed << std::setprecision(3) << r.wall_time_seconds
       << (r.failed ? "failed" : (r.converged ? "ok" : "not converged")) << '\n';
  }
  return os.str();
}

}  // namespace ttst
