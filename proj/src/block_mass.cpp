#include "fracldg/block_mass.hpp"

namespace fracldg {

BlockMassMatrix::BlockMassMatrix(const Mesh& mesh, const ReferenceBasis& basis)
    : nk_(basis.size()), ref_mass_(reference_mass(basis)), ref_llt_(ref_mass_) {
  scale_.resize(mesh.num_triangles());
  for (int e = 0; e < mesh.num_triangles(); ++e) scale_[e] = 2.0 * mesh.area[e];
}

Eigen::VectorXd BlockMassMatrix::apply(const Eigen::VectorXd& v) const {
  Eigen::VectorXd out(v.size());
  for (size_t e = 0; e < scale_.size(); ++e)
    out.segment(e * nk_, nk_).noalias() =
        scale_[e] * (ref_mass_ * v.segment(e * nk_, nk_));
  return out;
}

Eigen::VectorXd BlockMassMatrix::solve(const Eigen::VectorXd& b) const {
  Eigen::VectorXd out(b.size());
  for (size_t e = 0; e < scale_.size(); ++e)
    out.segment(e * nk_, nk_) =
        ref_llt_.solve(b.segment(e * nk_, nk_)) / scale_[e];
  return out;
}

double BlockMassMatrix::norm_squared(const Eigen::VectorXd& x) const {
  double sum = 0.0;
  for (size_t e = 0; e < scale_.size(); ++e) {
    const auto seg = x.segment(e * nk_, nk_);
    sum += scale_[e] * seg.dot(ref_mass_ * seg);
  }
  return sum;
}

Eigen::SparseMatrix<double> BlockMassMatrix::sparse() const {
  Eigen::SparseMatrix<double> out(size(), size());
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(scale_.size() * nk_ * nk_);
  for (size_t e = 0; e < scale_.size(); ++e)
    for (int a = 0; a < nk_; ++a)
      for (int b = 0; b < nk_; ++b)
        trip.emplace_back(e * nk_ + a, e * nk_ + b, scale_[e] * ref_mass_(a, b));
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

Eigen::SparseMatrix<double> BlockMassMatrix::sparse_inverse() const {
  const Eigen::MatrixXd ref_inv =
      ref_llt_.solve(Eigen::MatrixXd::Identity(nk_, nk_));
  Eigen::SparseMatrix<double> out(size(), size());
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(scale_.size() * nk_ * nk_);
  for (size_t e = 0; e < scale_.size(); ++e)
    for (int a = 0; a < nk_; ++a)
      for (int b = 0; b < nk_; ++b)
        trip.emplace_back(e * nk_ + a, e * nk_ + b, ref_inv(a, b) / scale_[e]);
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

BlockMassMatrix assemble_mass(const Mesh& mesh, const ReferenceBasis& basis) {
  return BlockMassMatrix(mesh, basis);
}

}  // namespace fracldg
