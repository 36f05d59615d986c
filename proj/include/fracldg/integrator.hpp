#pragma once

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>

#include "fracldg/basis.hpp"
#include "fracldg/ldg.hpp"
#include "fracldg/mesh.hpp"

namespace fracldg {

struct SolverConfig {
  double s = 0.5;
  int k = 1;
  FluxVariant flux = FluxVariant::MinusInterior;
  double theta = 5.0;
  double tau = 2.5e-4;
  double T = 1.0;
  double tol = 1e-12;     // linear-solve relative residual
  int max_iterations = 5000;
  // Assemble A densely and factor (M + tau A) once per run; the conjugate
  // gradient path stays the default for individual steps.
  bool dense_operator = false;
  int quad_order = 0;  // 0 = default per degree
  int threads = 1;
};

struct State {
  double t = 0.0;
  Eigen::VectorXd u;
};

// Auxiliary LDG fields p = grad u and q = (-Delta)^(s-1) p, reconstructed on
// demand from a scalar state.
struct AuxiliaryFields {
  Eigen::VectorXd px, py, qx, qy;
};

AuxiliaryFields reconstruct_auxiliary(const LdgOperators& ops, const RieszGram& gram,
                                      const Eigen::VectorXd& u);

struct SolverError : std::runtime_error {
  SolverError(const std::string& what, double residual_, int iterations_)
      : std::runtime_error(what), residual(residual_), iterations(iterations_) {}
  double residual;
  int iterations;
};

// Time-dependent data of the evolution problem. When the source factors as
// time_scale(t) * spatial(x), the load vector is assembled once and rescaled
// per step; otherwise `source` is integrated at every step.
struct Problem {
  std::function<double(Vec2)> u0;
  std::function<double(Vec2, double)> source;        // f(x, t)
  std::function<double(Vec2)> source_spatial;        // optional separable form
  std::function<double(double)> source_time_scale;
};

// Elementwise L2 projection onto the DG space (quadrature exactness 2k+4).
Eigen::VectorXd project_l2(const std::function<double(Vec2)>& fn, const Mesh& mesh,
                           const ReferenceBasis& basis);

// Load vector b[a] = Int fn * phi_a (same quadrature as the projection).
Eigen::VectorXd assemble_load(const std::function<double(Vec2)>& fn, const Mesh& mesh,
                              const ReferenceBasis& basis);

// One backward Euler step: solves (M + tau A) u' = M u + tau * load with
// M-preconditioned conjugate gradients to the configured relative residual.
// Throws SolverError (with the final residual) on non-convergence.
State step(const State& state, const SolverConfig& config, const SpatialOperator& op,
           const Eigen::VectorXd& load_at_next);

// Full backward Euler evolution from t=0 to t=T (last step truncated to land
// exactly on T). Deterministic for fixed inputs and thread count.
State run(const SolverConfig& config, const Problem& problem, const Mesh& mesh,
          const ReferenceBasis& basis, const SpatialOperator& op);

}  // namespace fracldg
