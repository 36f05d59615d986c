#include "fracldg/integrator.hpp"

#include <cmath>

#include "fracldg/quadrature.hpp"

namespace fracldg {

Eigen::VectorXd assemble_load(const std::function<double(Vec2)>& fn, const Mesh& mesh,
                              const ReferenceBasis& basis) {
  const int nk = basis.size();
  const TriangleRule rule = triangle_rule(2 * basis.degree() + 4);
  const Eigen::MatrixXd phi = basis.values_at(rule.nodes);
  Eigen::VectorXd load(mesh.num_triangles() * nk);
  for (int e = 0; e < mesh.num_triangles(); ++e) {
    const TriangleVerts verts = mesh.triangle_verts(e);
    const double det = 2.0 * mesh.area[e];
    Eigen::VectorXd local = Eigen::VectorXd::Zero(nk);
    for (size_t q = 0; q < rule.nodes.size(); ++q) {
      const double w = rule.weights[q] * det * fn(map_to_physical(verts, rule.nodes[q]));
      local += w * phi.row(q).transpose();
    }
    load.segment(e * nk, nk) = local;
  }
  return load;
}

Eigen::VectorXd project_l2(const std::function<double(Vec2)>& fn, const Mesh& mesh,
                           const ReferenceBasis& basis) {
  const BlockMassMatrix mass(mesh, basis);
  return mass.solve(assemble_load(fn, mesh, basis));
}

AuxiliaryFields reconstruct_auxiliary(const LdgOperators& ops, const RieszGram& gram,
                                      const Eigen::VectorXd& u) {
  AuxiliaryFields out;
  out.px = ops.mass.solve(ops.grad_x * u);
  out.py = ops.mass.solve(ops.grad_y * u);
  auto [qx, qy] = apply_negative_laplacian(gram, ops.mass, out.px, out.py);
  out.qx = std::move(qx);
  out.qy = std::move(qy);
  return out;
}

namespace {

struct CgOutcome {
  Eigen::VectorXd x;
  int iterations = 0;
  double rel_residual = 0.0;
};

// Preconditioned conjugate gradients for (M + tau A) x = b with the
// block-diagonal mass matrix as preconditioner.
CgOutcome cg_solve(const SpatialOperator& op, double tau, const Eigen::VectorXd& b,
                   const Eigen::VectorXd& x0, double tol, int max_iterations) {
  const BlockMassMatrix& mass = op.operators().mass;
  const auto apply = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return mass.apply(v) + tau * op.apply(v);
  };

  CgOutcome out;
  out.x = x0;
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    out.x.setZero();
    return out;
  }
  Eigen::VectorXd r = b - apply(out.x);
  Eigen::VectorXd z = mass.solve(r);
  Eigen::VectorXd p = z;
  double rz = r.dot(z);
  for (int it = 0; it < max_iterations; ++it) {
    out.rel_residual = r.norm() / bnorm;
    out.iterations = it;
    if (out.rel_residual <= tol) return out;
    const Eigen::VectorXd q = apply(p);
    const double alpha = rz / p.dot(q);
    out.x += alpha * p;
    r -= alpha * q;
    z = mass.solve(r);
    const double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  out.rel_residual = r.norm() / bnorm;
  out.iterations = max_iterations;
  return out;
}

Eigen::VectorXd load_at(const Problem& problem, const Mesh& mesh,
                        const ReferenceBasis& basis, double t,
                        const Eigen::VectorXd* spatial_load) {
  if (spatial_load) return problem.source_time_scale(t) * (*spatial_load);
  if (!problem.source) return Eigen::VectorXd::Zero(mesh.num_triangles() * basis.size());
  return assemble_load([&](Vec2 x) { return problem.source(x, t); }, mesh, basis);
}

}  // namespace

State step(const State& state, const SolverConfig& config, const SpatialOperator& op,
           const Eigen::VectorXd& load_at_next) {
  const BlockMassMatrix& mass = op.operators().mass;
  const Eigen::VectorXd rhs = mass.apply(state.u) + config.tau * load_at_next;
  CgOutcome out = cg_solve(op, config.tau, rhs, state.u, config.tol,
                           config.max_iterations);
  if (out.rel_residual > config.tol || !out.x.allFinite())
    throw SolverError("backward Euler solve did not converge (relative residual " +
                          std::to_string(out.rel_residual) + ")",
                      out.rel_residual, out.iterations);
  State next;
  next.t = state.t + config.tau;
  next.u = std::move(out.x);
  return next;
}

State run(const SolverConfig& config, const Problem& problem, const Mesh& mesh,
          const ReferenceBasis& basis, const SpatialOperator& op) {
  if (config.tau <= 0 || config.T <= 0 || config.tau > config.T)
    throw std::invalid_argument("run: need 0 < tau <= T");
  if (!(config.tol > 0 && config.tol <= 1e-6))
    throw std::invalid_argument("run: linear-solve tolerance must be in (0, 1e-6]");

  const bool separable =
      static_cast<bool>(problem.source_spatial) && static_cast<bool>(problem.source_time_scale);
  Eigen::VectorXd spatial_load;
  if (separable) spatial_load = assemble_load(problem.source_spatial, mesh, basis);

  State state;
  state.t = 0.0;
  state.u = project_l2(problem.u0, mesh, basis);

  const BlockMassMatrix& mass = op.operators().mass;
  Eigen::LLT<Eigen::MatrixXd> factor;
  double factored_tau = -1.0;
  Eigen::MatrixXd system;
  if (config.dense_operator) {
    system = op.dense();
    const Eigen::MatrixXd m_dense(mass.sparse());
    system = m_dense + config.tau * system;  // refactored below if tau changes
    factor.compute(system);
    if (factor.info() != Eigen::Success)
      throw SolverError("dense factorization of M + tau*A failed", 0.0, 0);
    factored_tau = config.tau;
    system = (system - m_dense) / config.tau;  // keep A for the truncated step
  }

  const long nsteps = std::lround(std::ceil(config.T / config.tau - 1e-12));
  for (long n = 0; n < nsteps; ++n) {
    double tau = config.tau;
    if (n == nsteps - 1) tau = config.T - state.t;  // land exactly on T
    SolverConfig local = config;
    local.tau = tau;
    const double t_next = n == nsteps - 1 ? config.T : state.t + tau;
    const Eigen::VectorXd load =
        load_at(problem, mesh, basis, t_next, separable ? &spatial_load : nullptr);
    if (config.dense_operator) {
      if (std::abs(tau - factored_tau) > 1e-14 * config.tau) {
        factor.compute(Eigen::MatrixXd(mass.sparse()) + tau * system);
        factored_tau = tau;
      }
      State next;
      next.t = t_next;
      next.u = factor.solve(mass.apply(state.u) + tau * load);
      state = std::move(next);
    } else {
      state = step(state, local, op, load);
      state.t = t_next;
    }
  }
  return state;
}

}  // namespace fracldg
