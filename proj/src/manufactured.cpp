#include "fracldg/manufactured.hpp"

#include <cmath>

#include "fracldg/quadrature.hpp"
#include "fracldg/special_functions.hpp"

namespace fracldg {

double exact_solution(Vec2 x, double t, double p) {
  const double w = 1.0 - (x.x * x.x + x.y * x.y);
  if (w <= 0.0) return 0.0;
  return std::exp(-t) * std::pow(w, p);
}

double bump_fractional_laplacian_coefficient(double s, double p) {
  return std::pow(2.0, 2.0 * s) * gamma_fn(s + 1.0) * gamma_fn(p + 1.0) /
         gamma_fn(p + 1.0 - s);
}

double source_term(Vec2 x, double t, double s, double p) {
  const double r2 = x.x * x.x + x.y * x.y;
  const double w = 1.0 - r2;
  const double frac_lap =
      bump_fractional_laplacian_coefficient(s, p) * hyp2f1(s + 1.0, s - p, 1.0, r2);
  return std::exp(-t) * (frac_lap - (w > 0.0 ? std::pow(w, p) : 0.0));
}

Problem ManufacturedProblem::problem() const {
  Problem prob;
  const double p_ = p, s_ = s;
  prob.u0 = [p_](Vec2 x) { return exact_solution(x, 0.0, p_); };
  prob.source = [s_, p_](Vec2 x, double t) { return source_term(x, t, s_, p_); };
  prob.source_spatial = [s_, p_](Vec2 x) { return source_term(x, 0.0, s_, p_); };
  prob.source_time_scale = [](double t) { return std::exp(-t); };
  return prob;
}

double l2_error(const Eigen::VectorXd& u, const std::function<double(Vec2)>& exact,
                const Mesh& mesh, const ReferenceBasis& basis) {
  const int nk = basis.size();
  const TriangleRule rule = triangle_rule(2 * basis.degree() + 4);
  const Eigen::MatrixXd phi = basis.values_at(rule.nodes);
  double sum = 0.0;
  for (int e = 0; e < mesh.num_triangles(); ++e) {
    const TriangleVerts verts = mesh.triangle_verts(e);
    const double det = 2.0 * mesh.area[e];
    const auto coeffs = u.segment(e * nk, nk);
    for (size_t q = 0; q < rule.nodes.size(); ++q) {
      const double uh = phi.row(q).dot(coeffs);
      const double diff = uh - exact(map_to_physical(verts, rule.nodes[q]));
      sum += rule.weights[q] * det * diff * diff;
    }
  }
  return std::sqrt(sum);
}

}  // namespace fracldg
