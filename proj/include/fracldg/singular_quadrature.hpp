#pragma once

#include <array>
#include <vector>

#include "fracldg/geometry.hpp"
#include "fracldg/quadrature.hpp"

namespace fracldg {

enum class PairAdjacency { Identical, SharedEdge, SharedVertex, Disjoint };

// One 4D quadrature node: reference coordinates on each triangle of the pair.
// For the touching cases the coordinates live in the permuted frame that puts
// the shared vertices first (see classify_pair).
struct PairQuadNode {
  Vec2 x_ref;
  Vec2 y_ref;
  double weight;
};

struct SingularPairRule {
  PairAdjacency adjacency;
  int order = 0;   // per-direction Gauss order m
  double s = 0.0;  // fractional order the radial weights are matched to
  std::vector<PairQuadNode> nodes;
};

// Rule for the double integral of f(x,y) = phi(x) psi(y) |x-y|^(-2s) over a
// triangle pair of the given adjacency. Built from the relative-coordinate
// subdomain transforms with Gauss-Jacobi radial rules matched to the kernel
// exponent, so the transformed integrand is analytic and convergence in m is
// exponential. The Disjoint case is the tensor product of two regular
// triangle rules (m points per direction each).
SingularPairRule singular_pair_rule(PairAdjacency adjacency, int m, double s);

struct PairClassification {
  PairAdjacency adjacency;
  // Rule position -> local vertex index; shared vertices first, in matching
  // order between the two triangles.
  std::array<int, 3> perm_x = {0, 1, 2};
  std::array<int, 3> perm_y = {0, 1, 2};
};

PairClassification classify_pair(const std::array<int, 3>& tri_x,
                                 const std::array<int, 3>& tri_y);

// Converts reference coordinates in a permuted vertex frame back to the
// triangle's canonical frame (a barycentric reshuffle, exact).
inline Vec2 permuted_to_canonical(Vec2 ref, const std::array<int, 3>& perm) {
  double lambda[3];
  lambda[perm[0]] = 1.0 - ref.x - ref.y;
  lambda[perm[1]] = ref.x;
  lambda[perm[2]] = ref.y;
  return {lambda[1], lambda[2]};
}

// Applies a pair rule to an integrand f(x, y) in physical coordinates
// (kernel included). Vertices must be given in the rule's permuted order.
template <typename F>
double integrate_pair(const SingularPairRule& rule, const TriangleVerts& tx,
                      const TriangleVerts& ty, F&& f) {
  const double jac = 4.0 * triangle_area(tx) * triangle_area(ty);
  double sum = 0.0;
  for (const PairQuadNode& node : rule.nodes) {
    const Vec2 x = map_to_physical(tx, node.x_ref);
    const Vec2 y = map_to_physical(ty, node.y_ref);
    sum += node.weight * f(x, y);
  }
  return jac * sum;
}

}  // namespace fracldg
