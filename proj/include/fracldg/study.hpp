#pragma once

#include <string>
#include <vector>

#include "fracldg/integrator.hpp"
#include "fracldg/report.hpp"

namespace fracldg {

struct StudyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StudyConfig {
  std::vector<double> s_values = {0.5};
  int k = 1;
  FluxVariant flux = FluxVariant::MinusInterior;
  std::vector<int> levels = {0, 1, 2};  // disk-generator refinement levels
  double p = 6.0;                        // manufactured exponent
  double theta = 5.0;
  double tau = 2.5e-4;
  double T = 1.0;
  double solver_tol = 1e-12;
  int quad_order = 0;  // 0 = default per degree
  int threads = 1;
  bool dense_operator = true;
  std::string mesh_file;   // single-solve override of the generator
  std::string cache_dir;   // optional Gram matrix cache directory
};

struct SolveSummary {
  ReportRow row;
  State state;
};

// One manufactured solve on a given mesh.
SolveSummary run_single(const StudyConfig& config, double s, const Mesh& mesh);

// Mesh-refinement study over the (s, level) grid with observed orders per s
// series. Throws StudyError on degenerate configurations; solver failures
// propagate with the offending configuration in the message.
ConvergenceReport run_convergence(const StudyConfig& config);

}  // namespace fracldg
