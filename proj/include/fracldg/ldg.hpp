#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <iosfwd>

#include "fracldg/basis.hpp"
#include "fracldg/block_mass.hpp"
#include "fracldg/mesh.hpp"
#include "fracldg/riesz.hpp"

namespace fracldg {

// Alternating flux choice. PlusInterior takes u_hat = u+ / q_hat = q- on
// interior edges and penalizes the Plus boundary subset; MinusInterior is the
// mirrored pairing. u_hat = 0 on the boundary in both.
enum class FluxVariant { PlusInterior, MinusInterior };

struct LdgOperators {
  FluxVariant flux = FluxVariant::MinusInterior;
  double theta = 5.0;
  double h = 0.0;  // global mesh size used in the penalty theta/h
  BlockMassMatrix mass;
  // Discrete gradient with flux, per vector component (rows: component DoFs,
  // cols: scalar DoFs).
  Eigen::SparseMatrix<double> grad_x, grad_y;
  // Independently assembled divergence-with-flux (rows: scalar DoFs); the
  // solver itself uses -G^T, this exists to check the adjointness identity.
  Eigen::SparseMatrix<double> div_x, div_y;
  // Boundary penalty, supported on elements touching the penalized subset.
  Eigen::SparseMatrix<double> penalty;
};

std::pair<Eigen::SparseMatrix<double>, Eigen::SparseMatrix<double>>
assemble_gradient(const Mesh& mesh, const ReferenceBasis& basis, FluxVariant flux);

struct DivergencePenalty {
  Eigen::SparseMatrix<double> div_x, div_y;
  Eigen::SparseMatrix<double> penalty;
};

DivergencePenalty assemble_divergence_and_penalty(const Mesh& mesh,
                                                  const ReferenceBasis& basis,
                                                  FluxVariant flux, double theta,
                                                  double h);

LdgOperators assemble_ldg_operators(const Mesh& mesh, const ReferenceBasis& basis,
                                    FluxVariant flux, double theta);

// Composite spatial operator A = G^T M^-1 S M^-1 G + P, symmetric PSD.
// Applications are matrix-free (two mass solves and a dense Gram multiply per
// component); dense() assembles A explicitly for direct factorization.
class SpatialOperator {
 public:
  SpatialOperator(const LdgOperators& ops, const RieszGram& gram);

  int size() const { return static_cast<int>(ops_->grad_x.cols()); }
  const LdgOperators& operators() const { return *ops_; }
  const RieszGram& gram() const { return *gram_; }

  Eigen::VectorXd apply(const Eigen::VectorXd& u) const;
  Eigen::MatrixXd dense() const;

 private:
  const LdgOperators* ops_;
  const RieszGram* gram_;
};

// Debug dump in "row col value" triplet format.
void dump_triplets(const Eigen::SparseMatrix<double>& m, std::ostream& out);

}  // namespace fracldg
