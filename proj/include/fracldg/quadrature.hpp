#pragma once

#include <stdexcept>
#include <vector>

#include "fracldg/geometry.hpp"

namespace fracldg {

struct QuadratureError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Rule on the reference triangle {(0,0),(1,0),(0,1)}; weights sum to 1/2.
struct TriangleRule {
  std::vector<Vec2> nodes;
  std::vector<double> weights;
  int degree = 0;  // exactness
};

// Rule on [0,1]; weights sum to 1 (or to the Jacobi moment for weighted rules).
struct IntervalRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int degree = 0;
};

// n-point Gauss-Legendre on [0,1], exact for degree 2n-1.
IntervalRule gauss_legendre_01(int n);

// n-point Gauss rule for the weight x^alpha on [0,1] (alpha > -1); exact for
// integrals of x^alpha * p(x) with deg p <= 2n-1. Weights absorb the x^alpha
// factor.
IntervalRule gauss_jacobi_01(int n, double alpha);

// Interior-node conical-product rule of the requested exactness (degree <= 20).
TriangleRule triangle_rule(int degree);

// Conical-product rule with n points per direction (n^2 nodes, exactness 2n-1).
TriangleRule triangle_rule_points(int n);

// Gauss-Legendre rule on [0,1] of the requested exactness (degree <= 20).
IntervalRule edge_rule(int degree);

}  // namespace fracldg
