#include "fracldg/singular_quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace fracldg {

namespace {

// Subdomain parametrizations for the coincident / common-edge / common-vertex
// cases, in the "lower" coordinates (u, v) with 0 <= v <= u <= 1; the standard
// simplex point is (u - v, v). Each entry maps (xi, e1, e2, e3) to the pair
// (x_u, x_v, y_u, y_v).
struct SubPoint {
  double xu, xv, yu, yv;
};

SubPoint identical_sub(int sub, double xi, double e1, double e2, double e3) {
  switch (sub) {
    case 0: return {xi, xi * (1 - e1 + e1 * e2), xi * (1 - e1 * e2 * e3), xi * (1 - e1)};
    case 1: return {xi * (1 - e1 * e2 * e3), xi * (1 - e1), xi, xi * (1 - e1 + e1 * e2)};
    case 2: return {xi, xi * e1 * (1 - e2 + e2 * e3), xi * (1 - e1 * e2), xi * e1 * (1 - e2)};
    case 3: return {xi * (1 - e1 * e2), xi * e1 * (1 - e2), xi, xi * e1 * (1 - e2 + e2 * e3)};
    case 4: return {xi * (1 - e1 * e2 * e3), xi * e1 * (1 - e2 * e3), xi, xi * e1 * (1 - e2)};
    default: return {xi, xi * e1 * (1 - e2), xi * (1 - e1 * e2 * e3), xi * e1 * (1 - e2 * e3)};
  }
}

SubPoint shared_edge_sub(int sub, double xi, double e1, double e2, double e3) {
  switch (sub) {
    case 0: return {xi, xi * e1 * e3, xi * (1 - e1 * e2), xi * e1 * (1 - e2)};
    case 1: return {xi, xi * e1, xi * (1 - e1 * e2 * e3), xi * e1 * e2 * (1 - e3)};
    case 2: return {xi * (1 - e1 * e2), xi * e1 * (1 - e2), xi, xi * e1 * e2 * e3};
    case 3: return {xi * (1 - e1 * e2 * e3), xi * e1 * e2 * (1 - e3), xi, xi * e1};
    default: return {xi * (1 - e1 * e2 * e3), xi * e1 * (1 - e2 * e3), xi, xi * e1 * e2};
  }
}

SubPoint shared_vertex_sub(int sub, double xi, double e1, double e2, double e3) {
  if (sub == 0) return {xi, xi * e1, xi * e2, xi * e2 * e3};
  return {xi * e2, xi * e2 * e3, xi, xi * e1};
}

PairQuadNode make_node(const SubPoint& p, double weight) {
  return {{p.xu - p.xv, p.xv}, {p.yu - p.yv, p.yv}, weight};
}

}  // namespace

SingularPairRule singular_pair_rule(PairAdjacency adjacency, int m, double s) {
  if (m < 2) throw QuadratureError("singular_pair_rule: need order m >= 2");
  if (!(s > 0.0 && s < 1.0)) throw QuadratureError("singular_pair_rule: need s in (0,1)");

  SingularPairRule rule;
  rule.adjacency = adjacency;
  rule.order = m;
  rule.s = s;

  if (adjacency == PairAdjacency::Disjoint) {
    const TriangleRule tri = triangle_rule_points(m);
    rule.nodes.reserve(tri.nodes.size() * tri.nodes.size());
    for (size_t i = 0; i < tri.nodes.size(); ++i)
      for (size_t j = 0; j < tri.nodes.size(); ++j)
        rule.nodes.push_back({tri.nodes[i], tri.nodes[j], tri.weights[i] * tri.weights[j]});
    return rule;
  }

  // The radial directions carry the fractional powers of the transformed
  // integrand; Gauss-Jacobi absorbs them and the residual (.)^(2s) factors
  // cancel the kernel homogeneity exactly at the nodes. The remaining
  // directions see an analytic but non-polynomial distance factor and get
  // twice the order.
  const IntervalRule xi_rule = gauss_jacobi_01(m, 3.0 - 2.0 * s);
  IntervalRule e1_rule, e2_rule, e3_rule;
  switch (adjacency) {
    case PairAdjacency::Identical:
      e1_rule = gauss_jacobi_01(m, 2.0 - 2.0 * s);
      e2_rule = gauss_jacobi_01(m, 1.0 - 2.0 * s);
      e3_rule = gauss_legendre_01(2 * m);
      break;
    case PairAdjacency::SharedEdge:
      e1_rule = gauss_jacobi_01(m, 2.0 - 2.0 * s);
      e2_rule = gauss_legendre_01(2 * m);
      e3_rule = gauss_legendre_01(2 * m);
      break;
    default:  // SharedVertex
      e1_rule = gauss_legendre_01(2 * m);
      e2_rule = gauss_legendre_01(2 * m);
      e3_rule = gauss_legendre_01(2 * m);
      break;
  }

  const int nsub = adjacency == PairAdjacency::Identical ? 6
                   : adjacency == PairAdjacency::SharedEdge ? 5
                                                            : 2;
  rule.nodes.reserve(nsub * xi_rule.nodes.size() * e1_rule.nodes.size() *
                     e2_rule.nodes.size() * e3_rule.nodes.size());

  for (size_t ix = 0; ix < xi_rule.nodes.size(); ++ix)
    for (size_t i1 = 0; i1 < e1_rule.nodes.size(); ++i1)
      for (size_t i2 = 0; i2 < e2_rule.nodes.size(); ++i2)
        for (size_t i3 = 0; i3 < e3_rule.nodes.size(); ++i3) {
          const double xi = xi_rule.nodes[ix], e1 = e1_rule.nodes[i1],
                       e2 = e2_rule.nodes[i2], e3 = e3_rule.nodes[i3];
          const double base = xi_rule.weights[ix] * e1_rule.weights[i1] *
                              e2_rule.weights[i2] * e3_rule.weights[i3];
          switch (adjacency) {
            case PairAdjacency::Identical: {
              const double w = base * std::pow(xi * e1 * e2, 2.0 * s);
              for (int sub = 0; sub < 6; ++sub)
                rule.nodes.push_back(make_node(identical_sub(sub, xi, e1, e2, e3), w));
              break;
            }
            case PairAdjacency::SharedEdge: {
              const double w = base * std::pow(xi * e1, 2.0 * s);
              for (int sub = 0; sub < 5; ++sub)
                rule.nodes.push_back(make_node(shared_edge_sub(sub, xi, e1, e2, e3),
                                               sub == 0 ? w : w * e2));
              break;
            }
            case PairAdjacency::SharedVertex: {
              const double w = base * std::pow(xi, 2.0 * s) * e2;
              for (int sub = 0; sub < 2; ++sub)
                rule.nodes.push_back(make_node(shared_vertex_sub(sub, xi, e1, e2, e3), w));
              break;
            }
            default: break;
          }
        }
  return rule;
}

PairClassification classify_pair(const std::array<int, 3>& tri_x,
                                 const std::array<int, 3>& tri_y) {
  PairClassification out;
  // Shared global vertices, in ascending global id so both permutations list
  // them in the same order.
  std::array<std::pair<int, int>, 3> shared;  // (global id, position pair packed)
  int n_shared = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (tri_x[i] == tri_y[j]) shared[n_shared++] = {tri_x[i], i * 3 + j};
  std::sort(shared.begin(), shared.begin() + n_shared);

  switch (n_shared) {
    case 3: out.adjacency = PairAdjacency::Identical; break;
    case 2: out.adjacency = PairAdjacency::SharedEdge; break;
    case 1: out.adjacency = PairAdjacency::SharedVertex; break;
    default: out.adjacency = PairAdjacency::Disjoint; return out;
  }
  if (out.adjacency == PairAdjacency::Identical) return out;  // identity frames

  bool used_x[3] = {false, false, false};
  bool used_y[3] = {false, false, false};
  for (int k = 0; k < n_shared; ++k) {
    const int i = shared[k].second / 3;
    const int j = shared[k].second % 3;
    out.perm_x[k] = i;
    out.perm_y[k] = j;
    used_x[i] = used_y[j] = true;
  }
  int px = n_shared, py = n_shared;
  for (int i = 0; i < 3; ++i) {
    if (!used_x[i]) out.perm_x[px++] = i;
    if (!used_y[i]) out.perm_y[py++] = i;
  }
  return out;
}

}  // namespace fracldg
