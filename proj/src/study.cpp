#include "fracldg/study.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>
#include <sstream>

#include "fracldg/integrator.hpp"
#include "fracldg/manufactured.hpp"

namespace fracldg {

namespace {

RieszGram obtain_gram(const StudyConfig& config, double s, const Mesh& mesh,
                      const ReferenceBasis& basis) {
  const RieszQuadrature quad{config.quad_order};
  if (config.cache_dir.empty())
    return assemble_riesz_gram(mesh, basis, s, quad, config.threads);

  std::filesystem::create_directories(config.cache_dir);
  const int order = config.quad_order > 0 ? config.quad_order
                                          : (basis.degree() == 1 ? 6 : 8);
  const std::uint64_t hash = mesh_content_hash(mesh);
  std::ostringstream name;
  name << config.cache_dir << "/gram_" << std::hex << hash << std::dec << "_k"
       << basis.degree() << "_s" << s << "_m" << order << ".rgrm";
  if (auto cached = try_load_riesz_gram(name.str(), hash, basis.degree(), s, order))
    return std::move(*cached);
  RieszGram gram = assemble_riesz_gram(mesh, basis, s, quad, config.threads);
  save_riesz_gram(name.str(), gram);
  return gram;
}

}  // namespace

SolveSummary run_single(const StudyConfig& config, double s, const Mesh& mesh) {
  const ReferenceBasis basis(config.k);
  const LdgOperators ops = assemble_ldg_operators(mesh, basis, config.flux, config.theta);
  const RieszGram gram = obtain_gram(config, s, mesh, basis);
  const SpatialOperator op(ops, gram);

  SolverConfig solver;
  solver.s = s;
  solver.k = config.k;
  solver.flux = config.flux;
  solver.theta = config.theta;
  solver.tau = config.tau;
  solver.T = config.T;
  solver.tol = config.solver_tol;
  solver.dense_operator = config.dense_operator;
  solver.quad_order = config.quad_order;
  solver.threads = config.threads;

  ManufacturedProblem manufactured{config.p, s};
  const State final_state = run(solver, manufactured.problem(), mesh, basis, op);

  SolveSummary summary;
  summary.row.s = s;
  summary.row.k = config.k;
  summary.row.flux = config.flux;
  summary.row.theta = config.theta;
  summary.row.h = mesh.h_global;
  summary.row.elements = mesh.num_triangles();
  summary.row.dofs = mesh.num_triangles() * basis.size();
  summary.row.tau = config.tau;
  summary.row.l2_error = l2_error(
      final_state.u,
      [&](Vec2 x) { return manufactured.exact(x, config.T); }, mesh, basis);
  summary.state = final_state;
  return summary;
}

ConvergenceReport run_convergence(const StudyConfig& config) {
  if (config.levels.size() < 2)
    throw StudyError("convergence study needs at least 2 mesh levels");
  if (std::set<int>(config.levels.begin(), config.levels.end()).size() !=
      config.levels.size())
    throw StudyError("convergence study levels must be distinct");
  if (config.s_values.empty()) throw StudyError("need at least one s value");
  if (!config.mesh_file.empty())
    throw StudyError("a fixed mesh file cannot drive a refinement study");

  std::vector<int> levels = config.levels;
  std::sort(levels.begin(), levels.end());

  std::vector<Mesh> meshes;
  meshes.reserve(levels.size());
  for (int level : levels) meshes.push_back(generate_disk_mesh(level));

  ConvergenceReport report;
  report.meta.tau = config.tau;
  report.meta.T = config.T;
  report.meta.quad_order =
      config.quad_order > 0 ? config.quad_order : (config.k == 1 ? 6 : 8);
  report.meta.solver_tol = config.solver_tol;

  for (double s : config.s_values) {
    const ReportRow* prev = nullptr;
    for (size_t i = 0; i < meshes.size(); ++i) {
      SolveSummary summary;
      try {
        summary = run_single(config, s, meshes[i]);
      } catch (const std::exception& err) {
        std::ostringstream what;
        what << "solve failed for s=" << s << " k=" << config.k << " flux="
             << flux_name(config.flux) << " level=" << levels[i] << " (h="
             << meshes[i].h_global << "): " << err.what();
        throw StudyError(what.str());
      }
      ReportRow row = summary.row;
      if (prev) row.rate = rate(prev->l2_error, row.l2_error, prev->h, row.h);
      report.rows.push_back(row);
      prev = &report.rows.back();
    }
  }
  return report;
}

}  // namespace fracldg
