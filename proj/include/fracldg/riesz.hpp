#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "fracldg/basis.hpp"
#include "fracldg/block_mass.hpp"
#include "fracldg/mesh.hpp"

namespace fracldg {

struct FracCoefficient {
  int dim;
  double order;
  double value;
};

// Normalizing constant of (-Delta)^order: for order in (0,1) the singular
// integral constant, for order in (-1,0) the (positive) Riesz potential
// constant. Throws std::domain_error for order = 0, |order| >= 1, or when the
// constant itself blows up (e.g. d=1, order=-1/2).
FracCoefficient frac_coefficient(int d, double order);

struct RieszQuadrature {
  int order = 0;  // per-direction Gauss order m; 0 = default (6 for k=1, 8 otherwise)
};

// Dense Gram matrix of the negative-order operator (-Delta)^(s-1) over the
// scalar DG basis: S[a][b] = c_{2,s-1} * Int Int phi_a(x) phi_b(y) |x-y|^(-2s).
struct RieszGram {
  double s = 0.0;
  int k = 0;
  int quad_order = 0;
  std::uint64_t mesh_hash = 0;
  Eigen::MatrixXd matrix;
};

RieszGram assemble_riesz_gram(const Mesh& mesh, const ReferenceBasis& basis,
                              double s, RieszQuadrature quad = {}, int threads = 1);

// Discrete q = (-Delta)^(s-1) p: solves M q_c = S p_c per component.
std::pair<Eigen::VectorXd, Eigen::VectorXd> apply_negative_laplacian(
    const RieszGram& gram, const BlockMassMatrix& mass, const Eigen::VectorXd& px,
    const Eigen::VectorXd& py);

// Exact potential of the density |y|^alpha on the unit disk evaluated at the
// origin: c_{2,s-1} * 2*pi / (alpha + 2 - 2s). Test oracle.
double riesz_potential_disk(double alpha, double s);

// Binary cache (little-endian): magic "RGRM", u32 version, u64 mesh hash,
// u32 k, u32 quad order, f64 s, u64 dimension, then dimension^2 f64 entries
// row-major.
void save_riesz_gram(const std::string& path, const RieszGram& gram);
std::optional<RieszGram> try_load_riesz_gram(const std::string& path,
                                             std::uint64_t mesh_hash, int k,
                                             double s, int quad_order);

}  // namespace fracldg
