#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <vector>

#include "fracldg/basis.hpp"
#include "fracldg/mesh.hpp"

namespace fracldg {

// Block-diagonal mass matrix of the discontinuous space. Every element block
// is 2*area times the reference mass matrix (affine scaling), so a single
// factorization serves all elements.
class BlockMassMatrix {
 public:
  BlockMassMatrix() = default;
  BlockMassMatrix(const Mesh& mesh, const ReferenceBasis& basis);

  int block_size() const { return nk_; }
  int size() const { return nk_ * static_cast<int>(scale_.size()); }
  const Eigen::MatrixXd& reference_block() const { return ref_mass_; }
  double element_scale(int e) const { return scale_[e]; }

  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
  // x^T M x, the discrete L2 norm squared.
  double norm_squared(const Eigen::VectorXd& x) const;

  Eigen::SparseMatrix<double> sparse() const;
  Eigen::SparseMatrix<double> sparse_inverse() const;

 private:
  int nk_ = 0;
  Eigen::MatrixXd ref_mass_;
  Eigen::LLT<Eigen::MatrixXd> ref_llt_;
  std::vector<double> scale_;  // 2*area per element
};

BlockMassMatrix assemble_mass(const Mesh& mesh, const ReferenceBasis& basis);

}  // namespace fracldg
