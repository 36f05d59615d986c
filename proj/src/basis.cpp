#include "fracldg/basis.hpp"

#include <stdexcept>
#include <string>

namespace fracldg {

ReferenceBasis::ReferenceBasis(int degree) : degree_(degree) {
  if (degree < 1 || degree > kMaxDegree)
    throw std::invalid_argument("ReferenceBasis: unsupported degree " +
                                std::to_string(degree));
  size_ = (degree + 1) * (degree + 2) / 2;

  for (int j = 0; j <= degree; ++j)
    for (int i = 0; i + j <= degree; ++i) {
      nodes_.push_back({static_cast<double>(i) / degree,
                        static_cast<double>(j) / degree});
      monomials_.push_back({i, j});
    }

  Eigen::MatrixXd vander(size_, size_);
  for (int r = 0; r < size_; ++r)
    for (int c = 0; c < size_; ++c)
      vander(r, c) = std::pow(nodes_[r].x, monomials_[c][0]) *
                     std::pow(nodes_[r].y, monomials_[c][1]);
  coeff_ = vander.fullPivLu().solve(Eigen::MatrixXd::Identity(size_, size_));
}

Eigen::VectorXd ReferenceBasis::eval(Vec2 p) const {
  Eigen::VectorXd mono(size_);
  for (int c = 0; c < size_; ++c)
    mono(c) = std::pow(p.x, monomials_[c][0]) * std::pow(p.y, monomials_[c][1]);
  return coeff_.transpose() * mono;
}

Eigen::MatrixXd ReferenceBasis::eval_grad(Vec2 p) const {
  Eigen::VectorXd dx(size_), dy(size_);
  for (int c = 0; c < size_; ++c) {
    const int i = monomials_[c][0], j = monomials_[c][1];
    dx(c) = i == 0 ? 0.0 : i * std::pow(p.x, i - 1) * std::pow(p.y, j);
    dy(c) = j == 0 ? 0.0 : j * std::pow(p.x, i) * std::pow(p.y, j - 1);
  }
  Eigen::MatrixXd grads(size_, 2);
  grads.col(0) = coeff_.transpose() * dx;
  grads.col(1) = coeff_.transpose() * dy;
  return grads;
}

Eigen::MatrixXd ReferenceBasis::values_at(const std::vector<Vec2>& pts) const {
  Eigen::MatrixXd vals(pts.size(), size_);
  for (size_t q = 0; q < pts.size(); ++q) vals.row(q) = eval(pts[q]).transpose();
  return vals;
}

LocalMatrices local_matrices(const TriangleVerts& tri, const ReferenceBasis& basis) {
  const int nk = basis.size();
  const TriangleRule rule = triangle_rule(2 * basis.degree());

  // Affine map: physical gradient = J^{-T} reference gradient.
  const Vec2 e1 = tri[1] - tri[0];
  const Vec2 e2 = tri[2] - tri[0];
  const double det = cross(e1, e2);  // 2*area, positive for CCW
  // J^{-T} = 1/det * [[e2.y, -e2.x], [-e1.y, e1.x]]

  LocalMatrices out;
  out.mass = Eigen::MatrixXd::Zero(nk, nk);
  out.gx = Eigen::MatrixXd::Zero(nk, nk);
  out.gy = Eigen::MatrixXd::Zero(nk, nk);
  for (size_t q = 0; q < rule.nodes.size(); ++q) {
    const double w = rule.weights[q] * std::abs(det);
    const Eigen::VectorXd vals = basis.eval(rule.nodes[q]);
    const Eigen::MatrixXd ref_grad = basis.eval_grad(rule.nodes[q]);
    Eigen::VectorXd gx_phys = (ref_grad.col(0) * e2.y - ref_grad.col(1) * e1.y) / det;
    Eigen::VectorXd gy_phys = (-ref_grad.col(0) * e2.x + ref_grad.col(1) * e1.x) / det;
    out.mass += w * vals * vals.transpose();
    out.gx += w * vals * gx_phys.transpose();
    out.gy += w * vals * gy_phys.transpose();
  }
  return out;
}

Eigen::MatrixXd reference_mass(const ReferenceBasis& basis) {
  const TriangleVerts ref = {Vec2{0, 0}, Vec2{1, 0}, Vec2{0, 1}};
  return local_matrices(ref, basis).mass;
}

}  // namespace fracldg
