// Benchmark driver: run single cases, grid-refinement studies, or whole
// per-problem result tables, and write CSV plus a text summary.

#include <CLI11.hpp>
#include <json.hpp>

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "ttst/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ttst;

namespace {

void apply_config_file(SolverConfig& cfg, const std::string& path) {
  std::ifstream is(path);
  if (!is) throw CLI::ValidationError("--config", "cannot open " + path);
  json j = json::parse(is);
  if (!j.is_object()) throw CLI::ValidationError("--config", "expected a flat object");
  for (auto& [key, val] : j.items()) {
    if (key == "method") cfg.method = parse_method(val.get<std::string>());
    else if (key == "scheme") cfg.scheme = scheme_from_name(val.get<std::string>());
    else if (key == "n_levels") cfg.n_levels = val.get<int>();
    else if (key == "level_offset") cfg.level_offset = val.get<int>();
    else if (key == "newton.variant")
      cfg.newton.variant = val.get<std::string>() == "correction" ? NewtonVariant::correction
                                                                  : NewtonVariant::rhs_reformulated;
    else if (key == "newton.n_iter") cfg.newton.n_iter = val.get<int>();
    else if (key == "newton.eps_res") cfg.newton.eps_res = val.get<double>();
    else if (key == "newton.eps_cor") cfg.newton.eps_cor = val.get<double>();
    else if (key == "newton.s") cfg.newton.s = val.get<double>();
    else if (key == "newton.n_line") cfg.newton.n_line = val.get<int>();
    else if (key == "newton.beta") cfg.newton.beta = val.get<double>();
    else if (key == "newton.eps_tt_init") cfg.newton.eps_tt_init = val.get<double>();
    else if (key == "newton.eps_tt_floor") cfg.newton.eps_tt_floor = val.get<double>();
    else if (key == "newton.chi") cfg.newton.chi = val.get<int>();
    else if (key == "dmrg.eps_dmrg") cfg.newton.dmrg.eps_dmrg = val.get<double>();
    else if (key == "dmrg.n_sweeps") cfg.newton.dmrg.n_sweeps = val.get<int>();
    else if (key == "dmrg.chi") cfg.newton.dmrg.chi = val.get<int>();
    else if (key == "dmrg.alpha") cfg.newton.dmrg.alpha = val.get<double>();
    else if (key == "dmrg.local_trunc") cfg.newton.dmrg.local_trunc = val.get<double>();
    else if (key == "policy.eps_tt_base") cfg.policy.eps_tt_base = val.get<double>();
    else if (key == "policy.dx0") cfg.policy.dx0 = val.get<double>();
    else if (key == "policy.dt0") cfg.policy.dt0 = val.get<double>();
    else if (key == "policy.order_x") cfg.policy.order_x = val.get<int>();
    else if (key == "policy.order_t") cfg.policy.order_t = val.get<int>();
    else if (key == "policy.sigma_factor") cfg.policy.sigma_factor = val.get<double>();
    else if (key == "ct.eps_res") cfg.ct.eps_res = val.get<double>();
    else if (key == "ct.n_iter") cfg.ct.n_iter = val.get<int>();
    else if (key == "ct.s") cfg.ct.s = val.get<double>();
    else if (key == "ct.n_line") cfg.ct.n_line = val.get<int>();
    else throw CLI::ValidationError("--config", "unknown key: " + key);
  }
}

void write_outputs(const std::vector<RunReport>& rows, const std::string& out_dir,
                   const std::string& stem) {
  const std::string table = render_table(rows);
  std::cout << table;
  if (out_dir.empty()) return;
  fs::create_directories(out_dir);
  {
    std::ofstream os(fs::path(out_dir) / (stem + ".csv"));
    write_csv(rows, os);
  }
  std::ofstream os(fs::path(out_dir) / (stem + ".txt"));
  os << table;
}

bool all_converged(const std::vector<RunReport>& rows) {
  for (const auto& r : rows)
    if (r.failed || !r.converged) return false;
  return true;
}

// The hyperbolic benchmarks keep N_x = 4 N_t; everything else runs square
// space-time grids.
int qx_for(const std::string& problem, int q_t) {
  return problem == "sine_gordon_kink" ? q_t + 2 : q_t;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* n = std::getenv("TTST_NUM_THREADS")) {
    const int k = std::atoi(n);
    if (k > 0) Eigen::setNbThreads(k);
  }

  CLI::App app{"Space-time tensor-train solver benchmarks"};
  app.require_subcommand(1);

  std::string problem = "fisher_kpp";
  std::string method_s, scheme_s, config_path, out_dir;
  int qx = 0, qt = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--problem", problem,
                    "fisher_kpp | burgers_parabolic | burgers_shock | sine_gordon_kink | kdv_soliton");
    sub->add_option("--method", method_s, "sl | ml | ct");
    sub->add_option("--scheme", scheme_s, "euler_m1 | crank_nicolson_m1 | euler_m2 | newmark_m2");
    sub->add_option("--config", config_path, "flat JSON config; CLI flags override");
    sub->add_option("--out", out_dir, "directory for CSV and text summaries");
  };

  CLI::App* run = app.add_subcommand("run", "solve one case");
  add_common(run);
  run->add_option("--qx", qx, "log2 of the spatial grid size");
  run->add_option("--qt", qt, "log2 of the number of time levels");

  int q_min = 4, q_max = 6;
  CLI::App* study = app.add_subcommand("study", "refinement ladder with fitted temporal order");
  add_common(study);
  study->add_option("--qmin", q_min, "coarsest time exponent");
  study->add_option("--qmax", q_max, "finest time exponent");

  int table_qmax = 0;
  CLI::App* table = app.add_subcommand("table", "full sl/ml/ct result table for one benchmark");
  add_common(table);
  table->add_option("--qmax", table_qmax, "finest time exponent (default per benchmark)");

  CLI11_PARSE(app, argc, argv);

  try {
    SolverConfig cfg = default_config(problem);
    if (!config_path.empty()) apply_config_file(cfg, config_path);
    if (!method_s.empty()) cfg.method = parse_method(method_s);
    if (!scheme_s.empty()) cfg.scheme = scheme_from_name(scheme_s);

    std::vector<RunReport> rows;

    if (run->parsed()) {
      if (qt <= 0) qt = 4;
      if (qx <= 0) qx = qx_for(problem, qt);
      rows.push_back(run_case(problem, qx, qt, cfg));
    } else if (study->parsed()) {
      if (q_max - q_min < 2) throw CLI::ValidationError("--qmax", "need at least three grids");
      for (int q = q_min; q <= q_max; ++q) rows.push_back(run_case(problem, qx_for(problem, q), q, cfg));
      double order = 0.0;
      {
        // same fit as convergence_study, over the rows just produced
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int m = 0;
        for (const auto& r : rows) {
          if (r.failed || !r.converged) continue;
          const double x = -r.q_t * std::log(2.0), y = std::log(r.l2_rel);
          sx += x; sy += y; sxx += x * x; sxy += x * y;
          ++m;
        }
        if (m >= 2) order = (m * sxy - sx * sy) / (m * sxx - sx * sx);
      }
      std::cout << "fitted temporal order: " << order << "\n";
    } else {
      int qmax = table_qmax > 0 ? table_qmax : (problem == "kdv_soliton" ? 6 : 7);
      int qmin = std::max(3, qmax - 3);
      for (Method m : {Method::sl, Method::ml, Method::ct}) {
        SolverConfig c = cfg;
        c.method = m;
        for (int q = qmin; q <= qmax; ++q) rows.push_back(run_case(problem, qx_for(problem, q), q, c));
      }
    }

    write_outputs(rows, out_dir, problem + "_" + app.get_subcommands()[0]->get_name());
    return all_converged(rows) ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
