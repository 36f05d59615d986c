// Command-line front end: single manufactured solves and mesh-refinement
// convergence studies with CSV output.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <thread>

#include "fracldg/integrator.hpp"
#include "fracldg/manufactured.hpp"
#include "fracldg/mesh.hpp"
#include "fracldg/report.hpp"
#include "fracldg/study.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitSolverError = 3;

struct CliOptions {
  std::vector<double> s_values;
  int k = 1;
  std::string flux = "minus";
  double theta = 5.0;
  double tau = 0.0;  // 0 = default 2.5e-4 * T
  double T = 1.0;
  double p = 6.0;
  std::vector<int> levels;
  std::string mesh_path;
  std::string out_path;
  int quad_order = 0;
  int threads = 0;
  std::string cache_dir;
  bool no_dense = false;
};

fracldg::StudyConfig make_study_config(const CliOptions& opt) {
  fracldg::StudyConfig config;
  config.s_values = opt.s_values.empty() ? std::vector<double>{0.5} : opt.s_values;
  config.k = opt.k;
  config.flux = fracldg::flux_from_name(opt.flux);
  config.levels = opt.levels;
  config.p = opt.p;
  config.theta = opt.theta;
  config.T = opt.T;
  config.tau = opt.tau > 0 ? opt.tau : 2.5e-4 * opt.T;
  config.quad_order = opt.quad_order;
  config.threads = opt.threads > 0
                       ? opt.threads
                       : static_cast<int>(std::thread::hardware_concurrency());
  config.dense_operator = !opt.no_dense;
  config.mesh_file = opt.mesh_path;
  config.cache_dir = opt.cache_dir;
  for (double s : config.s_values)
    if (!(s > 0.0 && s < 1.0))
      throw CLI::ValidationError("--s", "fractional order must lie in (0,1)");
  return config;
}

void emit(const fracldg::ConvergenceReport& report, const std::string& out_path) {
  fracldg::print_table(report, std::cout);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    fracldg::write_csv(report, out);
    std::cout << "wrote " << out_path << "\n";
  }
}

int run_solve(const CliOptions& opt) {
  fracldg::StudyConfig config = make_study_config(opt);
  fracldg::Mesh mesh;
  if (!opt.mesh_path.empty()) {
    mesh = fracldg::load_mesh_file(opt.mesh_path);
  } else {
    const int level = opt.levels.empty() ? 1 : opt.levels.front();
    mesh = fracldg::generate_disk_mesh(level);
  }

  fracldg::ConvergenceReport report;
  report.meta.tau = config.tau;
  report.meta.T = config.T;
  report.meta.quad_order =
      config.quad_order > 0 ? config.quad_order : (config.k == 1 ? 6 : 8);
  report.meta.solver_tol = config.solver_tol;
  config.mesh_file.clear();  // run_single receives the mesh directly
  for (double s : config.s_values)
    report.rows.push_back(fracldg::run_single(config, s, mesh).row);
  emit(report, opt.out_path);
  return 0;
}

int run_converge(const CliOptions& opt) {
  fracldg::StudyConfig config = make_study_config(opt);
  if (!opt.mesh_path.empty())
    throw CLI::ValidationError("--mesh", "a fixed mesh cannot drive a refinement study");
  if (config.levels.empty()) config.levels = {0, 1, 2};
  const fracldg::ConvergenceReport report = fracldg::run_convergence(config);
  emit(report, opt.out_path);
  return 0;
}

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--s", opt.s_values, "fractional order(s) in (0,1)");
  cmd->add_option("--k", opt.k, "polynomial degree")->check(CLI::Range(1, 2));
  cmd->add_option("--flux", opt.flux, "alternating flux variant")
      ->check(CLI::IsMember({"plus", "minus"}));
  cmd->add_option("--theta", opt.theta, "boundary penalty strength");
  cmd->add_option("--tau", opt.tau, "time step (default 2.5e-4 * T)");
  cmd->add_option("--T", opt.T, "final time");
  cmd->add_option("--p", opt.p, "manufactured solution exponent");
  cmd->add_option("--levels", opt.levels, "disk mesh refinement levels")
      ->delimiter(',');
  cmd->add_option("--mesh", opt.mesh_path, "mesh file overriding the generator");
  cmd->add_option("--out", opt.out_path, "CSV output path");
  cmd->add_option("--quad-order", opt.quad_order, "singular quadrature order");
  cmd->add_option("--threads", opt.threads, "assembly threads (default: all)");
  cmd->add_option("--cache-dir", opt.cache_dir, "Gram matrix cache directory");
  cmd->add_flag("--no-dense", opt.no_dense,
                "use matrix-free CG steps instead of a factored dense system");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LDG solver for the 2D fractional diffusion equation on the unit disk"};
  app.require_subcommand(1);

  CliOptions opt;
  CLI::App* solve = app.add_subcommand("solve", "single solve, reports the L2 error");
  CLI::App* converge = app.add_subcommand("converge", "mesh-refinement study");
  add_common_flags(solve, opt);
  add_common_flags(converge, opt);

  try {
    app.parse(argc, argv);
    if (solve->parsed()) return run_solve(opt);
    return run_converge(opt);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitConfigError;
  } catch (const fracldg::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolverError;
  } catch (const fracldg::StudyError& e) {
    const std::string what = e.what();
    std::cerr << what << "\n";
    return what.find("solve failed") != std::string::npos ? kExitSolverError
                                                          : kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}
