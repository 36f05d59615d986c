#pragma once

#include <Eigen/Dense>

#include <vector>

#include "fracldg/geometry.hpp"
#include "fracldg/quadrature.hpp"

namespace fracldg {

// Nodal Lagrange basis of degree k on the reference triangle, interpolating at
// the uniformly spaced nodes (i/k, j/k), i+j <= k.
class ReferenceBasis {
 public:
  static constexpr int kMaxDegree = 4;

  explicit ReferenceBasis(int degree);

  int degree() const { return degree_; }
  int size() const { return size_; }  // (k+1)(k+2)/2
  const std::vector<Vec2>& nodes() const { return nodes_; }

  // Values of all basis functions at a reference point.
  Eigen::VectorXd eval(Vec2 p) const;
  // Gradients (w.r.t. reference coordinates); rows are basis functions,
  // columns d/dx, d/dy.
  Eigen::MatrixXd eval_grad(Vec2 p) const;

  // Tabulated values at a list of points: (#points) x size.
  Eigen::MatrixXd values_at(const std::vector<Vec2>& pts) const;

 private:
  int degree_;
  int size_;
  std::vector<Vec2> nodes_;
  std::vector<std::array<int, 2>> monomials_;
  Eigen::MatrixXd coeff_;  // column j = monomial coefficients of basis j
};

struct LocalMatrices {
  Eigen::MatrixXd mass;  // mass[a][b] = integral l_a l_b
  Eigen::MatrixXd gx;    // gx[a][b]   = integral l_a d/dx l_b
  Eigen::MatrixXd gy;    // gy[a][b]   = integral l_a d/dy l_b
};

// Element matrices on a physical triangle, exact (rule degree >= 2k).
LocalMatrices local_matrices(const TriangleVerts& tri, const ReferenceBasis& basis);

// Mass matrix on the reference triangle; the physical element mass matrix is
// 2*area times this.
Eigen::MatrixXd reference_mass(const ReferenceBasis& basis);

}  // namespace fracldg
