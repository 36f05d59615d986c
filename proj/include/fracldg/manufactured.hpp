#pragma once

#include <Eigen/Dense>

#include <functional>

#include "fracldg/basis.hpp"
#include "fracldg/integrator.hpp"
#include "fracldg/mesh.hpp"

namespace fracldg {

// Exact solution family u(x,t) = e^(-t) (1-|x|^2)_+^p, zero outside the unit
// disk, with the closed hypergeometric source that makes it solve
// u_t + (-Delta)^s u = f under the homogeneous volume constraint.
double exact_solution(Vec2 x, double t, double p);
double source_term(Vec2 x, double t, double s, double p);

// Coefficient of (-Delta)^s (1-|x|^2)_+^p = coeff * 2F1(s+1, s-p; 1; |x|^2):
// 2^(2s) Gamma(s+1) Gamma(p+1) / Gamma(p+1-s).
double bump_fractional_laplacian_coefficient(double s, double p);

struct ManufacturedProblem {
  double p = 6.0;
  double s = 0.5;

  double exact(Vec2 x, double t) const { return exact_solution(x, t, p); }
  double source(Vec2 x, double t) const { return source_term(x, t, s, p); }
  Problem problem() const;
};

// L2 norm of (u_h - exact) over the mesh, quadrature exactness 2k+4.
double l2_error(const Eigen::VectorXd& u, const std::function<double(Vec2)>& exact,
                const Mesh& mesh, const ReferenceBasis& basis);

}  // namespace fracldg
