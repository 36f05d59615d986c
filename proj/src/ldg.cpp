#include "fracldg/ldg.hpp"

#include <array>
#include <ostream>
#include <vector>

#include "fracldg/quadrature.hpp"

namespace fracldg {

namespace {

constexpr std::array<Vec2, 3> kRefCorners = {Vec2{0, 0}, Vec2{1, 0}, Vec2{0, 1}};

int local_vertex_index(const std::array<int, 3>& tri, int global) {
  for (int i = 0; i < 3; ++i)
    if (tri[i] == global) return i;
  throw MeshError("edge endpoint not found in incident triangle");
}

// Trace values of all basis functions of element `t` along an edge,
// tabulated at the 1D rule nodes (parametrized from edge.v[0] to edge.v[1]).
Eigen::MatrixXd edge_traces(const Mesh& mesh, const ReferenceBasis& basis,
                            const Edge& edge, int t, const IntervalRule& rule) {
  const Vec2 ra = kRefCorners[local_vertex_index(mesh.triangles[t], edge.v[0])];
  const Vec2 rb = kRefCorners[local_vertex_index(mesh.triangles[t], edge.v[1])];
  Eigen::MatrixXd traces(rule.nodes.size(), basis.size());
  for (size_t q = 0; q < rule.nodes.size(); ++q)
    traces.row(q) = basis.eval(ra + rule.nodes[q] * (rb - ra)).transpose();
  return traces;
}

// Which element supplies the single-valued u trace on an interior edge.
bool u_trace_from_owner(const Edge& edge, FluxVariant flux) {
  const bool plus_side_is_owner = edge.beta_dot_n > 0;
  return flux == FluxVariant::PlusInterior ? plus_side_is_owner : !plus_side_is_owner;
}

using Triplets = std::vector<Eigen::Triplet<double>>;

void add_trace_product(Triplets& out, int row_base, int col_base,
                       const Eigen::MatrixXd& row_traces,
                       const Eigen::MatrixXd& col_traces,
                       const IntervalRule& rule, double factor) {
  const int nk = static_cast<int>(row_traces.cols());
  for (int a = 0; a < nk; ++a)
    for (int b = 0; b < nk; ++b) {
      double v = 0.0;
      for (size_t q = 0; q < rule.nodes.size(); ++q)
        v += rule.weights[q] * row_traces(q, a) * col_traces(q, b);
      out.emplace_back(row_base + a, col_base + b, factor * v);
    }
}

}  // namespace

std::pair<Eigen::SparseMatrix<double>, Eigen::SparseMatrix<double>>
assemble_gradient(const Mesh& mesh, const ReferenceBasis& basis, FluxVariant flux) {
  const int nk = basis.size();
  const int n = mesh.num_triangles() * nk;
  const IntervalRule rule = edge_rule(2 * basis.degree());
  Triplets tx, ty;

  // Volume term (grad u, z): entry [z_a][u_b] = Int l_a d_c l_b.
  for (int e = 0; e < mesh.num_triangles(); ++e) {
    const LocalMatrices local = local_matrices(mesh.triangle_verts(e), basis);
    for (int a = 0; a < nk; ++a)
      for (int b = 0; b < nk; ++b) {
        tx.emplace_back(e * nk + a, e * nk + b, local.gx(a, b));
        ty.emplace_back(e * nk + a, e * nk + b, local.gy(a, b));
      }
  }

  // Flux term -<(u - u_hat), n.z> per element side.
  for (const Edge& edge : mesh.edges) {
    const int L = edge.owner;
    const Eigen::MatrixXd tl = edge_traces(mesh, basis, edge, L, rule);
    const double lnx = edge.length * edge.normal.x;
    const double lny = edge.length * edge.normal.y;
    if (edge.cls == EdgeClass::Boundary) {
      // u_hat = 0: contributes -<u_L, n.z_L>.
      add_trace_product(tx, L * nk, L * nk, tl, tl, rule, -lnx);
      add_trace_product(ty, L * nk, L * nk, tl, tl, rule, -lny);
      continue;
    }
    const int R = edge.neighbor;
    const Eigen::MatrixXd tr = edge_traces(mesh, basis, edge, R, rule);
    if (u_trace_from_owner(edge, flux)) {
      // u_hat = u_L: only the neighbor side sees a jump (its normal is -n).
      add_trace_product(tx, R * nk, R * nk, tr, tr, rule, lnx);
      add_trace_product(tx, R * nk, L * nk, tr, tl, rule, -lnx);
      add_trace_product(ty, R * nk, R * nk, tr, tr, rule, lny);
      add_trace_product(ty, R * nk, L * nk, tr, tl, rule, -lny);
    } else {
      // u_hat = u_R: only the owner side sees a jump.
      add_trace_product(tx, L * nk, L * nk, tl, tl, rule, -lnx);
      add_trace_product(tx, L * nk, R * nk, tl, tr, rule, lnx);
      add_trace_product(ty, L * nk, L * nk, tl, tl, rule, -lny);
      add_trace_product(ty, L * nk, R * nk, tl, tr, rule, lny);
    }
  }

  Eigen::SparseMatrix<double> gx(n, n), gy(n, n);
  gx.setFromTriplets(tx.begin(), tx.end());
  gy.setFromTriplets(ty.begin(), ty.end());
  return {std::move(gx), std::move(gy)};
}

DivergencePenalty assemble_divergence_and_penalty(const Mesh& mesh,
                                                  const ReferenceBasis& basis,
                                                  FluxVariant flux, double theta,
                                                  double h) {
  if (theta <= 0) throw std::invalid_argument("penalty strength theta must be > 0");
  if (h <= 0) throw std::invalid_argument("penalty mesh size h must be > 0");
  const int nk = basis.size();
  const int n = mesh.num_triangles() * nk;
  const IntervalRule rule = edge_rule(2 * basis.degree());
  Triplets tx, ty, tp;

  // Volume term (div q, v): entry [v_a][q_b] = Int l_a d_c l_b.
  for (int e = 0; e < mesh.num_triangles(); ++e) {
    const LocalMatrices local = local_matrices(mesh.triangle_verts(e), basis);
    for (int a = 0; a < nk; ++a)
      for (int b = 0; b < nk; ++b) {
        tx.emplace_back(e * nk + a, e * nk + b, local.gx(a, b));
        ty.emplace_back(e * nk + a, e * nk + b, local.gy(a, b));
      }
  }

  const BoundarySign penalized = flux == FluxVariant::PlusInterior
                                     ? BoundarySign::Plus
                                     : BoundarySign::Minus;

  for (const Edge& edge : mesh.edges) {
    const int L = edge.owner;
    const Eigen::MatrixXd tl = edge_traces(mesh, basis, edge, L, rule);
    if (edge.cls == EdgeClass::Boundary) {
      // q_hat = q_int, so -<n.(q - q_hat), v> vanishes; the penalty supplies
      // the u-dependence on the penalized subset (exterior trace is zero).
      if (edge.boundary_sign == penalized)
        add_trace_product(tp, L * nk, L * nk, tl, tl, rule,
                          theta / h * edge.length);
      continue;
    }
    const int R = edge.neighbor;
    const Eigen::MatrixXd tr = edge_traces(mesh, basis, edge, R, rule);
    const double lnx = edge.length * edge.normal.x;
    const double lny = edge.length * edge.normal.y;
    // q_hat takes the side opposite to u_hat.
    if (u_trace_from_owner(edge, flux)) {
      // q_hat = q_R: only the owner side sees a jump.
      add_trace_product(tx, L * nk, L * nk, tl, tl, rule, -lnx);
      add_trace_product(tx, L * nk, R * nk, tl, tr, rule, lnx);
      add_trace_product(ty, L * nk, L * nk, tl, tl, rule, -lny);
      add_trace_product(ty, L * nk, R * nk, tl, tr, rule, lny);
    } else {
      // q_hat = q_L: only the neighbor side sees a jump.
      add_trace_product(tx, R * nk, R * nk, tr, tr, rule, lnx);
      add_trace_product(tx, R * nk, L * nk, tr, tl, rule, -lnx);
      add_trace_product(ty, R * nk, R * nk, tr, tr, rule, lny);
      add_trace_product(ty, R * nk, L * nk, tr, tl, rule, -lny);
    }
  }

  DivergencePenalty out;
  out.div_x.resize(n, n);
  out.div_y.resize(n, n);
  out.penalty.resize(n, n);
  out.div_x.setFromTriplets(tx.begin(), tx.end());
  out.div_y.setFromTriplets(ty.begin(), ty.end());
  out.penalty.setFromTriplets(tp.begin(), tp.end());
  return out;
}

LdgOperators assemble_ldg_operators(const Mesh& mesh, const ReferenceBasis& basis,
                                    FluxVariant flux, double theta) {
  LdgOperators ops;
  ops.flux = flux;
  ops.theta = theta;
  ops.h = mesh.h_global;
  ops.mass = BlockMassMatrix(mesh, basis);
  auto [gx, gy] = assemble_gradient(mesh, basis, flux);
  ops.grad_x = std::move(gx);
  ops.grad_y = std::move(gy);
  DivergencePenalty dp =
      assemble_divergence_and_penalty(mesh, basis, flux, theta, ops.h);
  ops.div_x = std::move(dp.div_x);
  ops.div_y = std::move(dp.div_y);
  ops.penalty = std::move(dp.penalty);
  return ops;
}

SpatialOperator::SpatialOperator(const LdgOperators& ops, const RieszGram& gram)
    : ops_(&ops), gram_(&gram) {
  if (gram.matrix.rows() != ops.grad_x.cols())
    throw std::invalid_argument("SpatialOperator: Gram and LDG operator sizes differ");
}

Eigen::VectorXd SpatialOperator::apply(const Eigen::VectorXd& u) const {
  const BlockMassMatrix& mass = ops_->mass;
  const Eigen::VectorXd px = mass.solve(ops_->grad_x * u);
  const Eigen::VectorXd py = mass.solve(ops_->grad_y * u);
  const Eigen::VectorXd qx = mass.solve(gram_->matrix * px);
  const Eigen::VectorXd qy = mass.solve(gram_->matrix * py);
  return ops_->grad_x.transpose() * qx + ops_->grad_y.transpose() * qy +
         ops_->penalty * u;
}

Eigen::MatrixXd SpatialOperator::dense() const {
  const Eigen::SparseMatrix<double> minv = ops_->mass.sparse_inverse();
  Eigen::MatrixXd a = Eigen::MatrixXd(ops_->penalty);
  for (const auto* grad : {&ops_->grad_x, &ops_->grad_y}) {
    // W = M^-1 G stays sparse (block-diagonal solve preserves the pattern).
    const Eigen::SparseMatrix<double> w = minv * (*grad);
    a.noalias() += w.transpose() * (gram_->matrix * w);
  }
  return a;
}

void dump_triplets(const Eigen::SparseMatrix<double>& m, std::ostream& out) {
  char buf[96];
  for (int k = 0; k < m.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it) {
      std::snprintf(buf, sizeof(buf), "%ld %ld %.17g\n", static_cast<long>(it.row()),
                    static_cast<long>(it.col()), it.value());
      out << buf;
    }
}

}  // namespace fracldg
