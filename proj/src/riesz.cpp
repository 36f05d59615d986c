#include "fracldg/riesz.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "fracldg/parallel.hpp"
#include "fracldg/singular_quadrature.hpp"
#include "fracldg/special_functions.hpp"

namespace fracldg {

FracCoefficient frac_coefficient(int d, double order) {
  if (order == 0.0 || std::abs(order) >= 1.0)
    throw std::domain_error("frac_coefficient: order must be in (-1,0) or (0,1)");
  const double shifted = order + 0.5 * d;
  if (shifted <= 0.0 && shifted == std::floor(shifted))
    throw std::domain_error("frac_coefficient: Gamma(order + d/2) pole");
  const double value = std::pow(2.0, 2.0 * order) * order * gamma_fn(shifted) /
                       (std::pow(std::numbers::pi, 0.5 * d) * gamma_fn(1.0 - order));
  // Sign convention keeps the constant positive in both regimes.
  return {d, order, order > 0 ? value : -value};
}

double riesz_potential_disk(double alpha, double s) {
  if (alpha < 0.0) throw std::domain_error("riesz_potential_disk: need alpha >= 0");
  return frac_coefficient(2, s - 1.0).value * 2.0 * std::numbers::pi /
         (alpha + 2.0 - 2.0 * s);
}

namespace {

int default_order(int degree) { return degree == 1 ? 6 : 8; }

constexpr std::array<std::array<int, 3>, 6> kPerms = {
    std::array<int, 3>{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};

int perm_index(const std::array<int, 3>& perm) {
  for (int i = 0; i < 6; ++i)
    if (kPerms[i] == perm) return i;
  throw std::logic_error("invalid vertex permutation");
}

// Basis values at the rule nodes for every vertex permutation of each side,
// tabulated once per rule so pair blocks reduce to small matrix products.
struct RuleTables {
  std::array<Eigen::MatrixXd, 6> phi_x, phi_y;
};

RuleTables tabulate_rule(const SingularPairRule& rule, const ReferenceBasis& basis) {
  RuleTables tab;
  const int n = static_cast<int>(rule.nodes.size());
  for (int p = 0; p < 6; ++p) {
    tab.phi_x[p].resize(n, basis.size());
    tab.phi_y[p].resize(n, basis.size());
    for (int q = 0; q < n; ++q) {
      tab.phi_x[p].row(q) =
          basis.eval(permuted_to_canonical(rule.nodes[q].x_ref, kPerms[p])).transpose();
      tab.phi_y[p].row(q) =
          basis.eval(permuted_to_canonical(rule.nodes[q].y_ref, kPerms[p])).transpose();
    }
  }
  return tab;
}

}  // namespace

RieszGram assemble_riesz_gram(const Mesh& mesh, const ReferenceBasis& basis,
                              double s, RieszQuadrature quad, int threads) {
  if (!(s > 0.0 && s < 1.0))
    throw std::domain_error("assemble_riesz_gram: need s in (0,1)");
  const int m = quad.order > 0 ? quad.order : default_order(basis.degree());
  const int K = mesh.num_triangles();
  const int nk = basis.size();
  const int n = K * nk;
  const double coeff = frac_coefficient(2, s - 1.0).value;
  const double minus_s = -s;

  RieszGram gram;
  gram.s = s;
  gram.k = basis.degree();
  gram.quad_order = m;
  gram.mesh_hash = mesh_content_hash(mesh);
  gram.matrix = Eigen::MatrixXd::Zero(n, n);

  const SingularPairRule rule_ident = singular_pair_rule(PairAdjacency::Identical, m, s);
  const SingularPairRule rule_edge = singular_pair_rule(PairAdjacency::SharedEdge, m, s);
  const SingularPairRule rule_vert = singular_pair_rule(PairAdjacency::SharedVertex, m, s);
  const TriangleRule tri_far = triangle_rule_points(m);
  const TriangleRule tri_near = triangle_rule_points(m + 2);

  // The identical case always uses identity frames; the touching cases see
  // arbitrary permutations, tabulated up front.
  RuleTables ident_tab, edge_tab, vert_tab;
  {
    const int n = static_cast<int>(rule_ident.nodes.size());
    ident_tab.phi_x[0].resize(n, nk);
    ident_tab.phi_y[0].resize(n, nk);
    for (int q = 0; q < n; ++q) {
      ident_tab.phi_x[0].row(q) = basis.eval(rule_ident.nodes[q].x_ref).transpose();
      ident_tab.phi_y[0].row(q) = basis.eval(rule_ident.nodes[q].y_ref).transpose();
    }
  }
  edge_tab = tabulate_rule(rule_edge, basis);
  vert_tab = tabulate_rule(rule_vert, basis);
  const Eigen::MatrixXd far_phi = basis.values_at(tri_far.nodes);
  const Eigen::MatrixXd near_phi = basis.values_at(tri_near.nodes);

  std::vector<Vec2> centroids(K);
  for (int e = 0; e < K; ++e) centroids[e] = triangle_centroid(mesh.triangle_verts(e));

  // Each unordered pair owns the blocks (i,j) and (j,i) exclusively, so
  // parallel rows write disjoint memory and the result is schedule-independent.
  parallel_for(K, threads, [&](int i) {
    const TriangleVerts verts_i = mesh.triangle_verts(i);
    Eigen::MatrixXd block(nk, nk);
    Eigen::VectorXd kern;
    std::vector<Vec2> pts_x, pts_y;
    for (int j = i; j < K; ++j) {
      const TriangleVerts verts_j = mesh.triangle_verts(j);
      const PairClassification cls =
          i == j ? PairClassification{PairAdjacency::Identical, {0, 1, 2}, {0, 1, 2}}
                 : classify_pair(mesh.triangles[i], mesh.triangles[j]);

      if (cls.adjacency == PairAdjacency::Disjoint) {
        const bool near = norm(centroids[i] - centroids[j]) <
                          std::max(mesh.diameter[i], mesh.diameter[j]);
        const TriangleRule& tri = near ? tri_near : tri_far;
        const Eigen::MatrixXd& phi = near ? near_phi : far_phi;
        const int np = static_cast<int>(tri.nodes.size());
        pts_x.resize(np);
        pts_y.resize(np);
        for (int q = 0; q < np; ++q) {
          pts_x[q] = map_to_physical(verts_i, tri.nodes[q]);
          pts_y[q] = map_to_physical(verts_j, tri.nodes[q]);
        }
        Eigen::MatrixXd kmat(np, np);
        for (int q = 0; q < np; ++q)
          for (int r = 0; r < np; ++r) {
            const double dx = pts_x[q].x - pts_y[r].x;
            const double dy = pts_x[q].y - pts_y[r].y;
            kmat(q, r) = tri.weights[q] * tri.weights[r] *
                         std::exp(minus_s * std::log(dx * dx + dy * dy));
          }
        block.noalias() = phi.transpose() * kmat * phi;
      } else {
        const bool ident = cls.adjacency == PairAdjacency::Identical;
        const SingularPairRule& rule =
            ident                                        ? rule_ident
            : cls.adjacency == PairAdjacency::SharedEdge ? rule_edge
                                                         : rule_vert;
        const RuleTables& tab = ident                                        ? ident_tab
                                : cls.adjacency == PairAdjacency::SharedEdge ? edge_tab
                                                                             : vert_tab;
        const Eigen::MatrixXd& px = tab.phi_x[ident ? 0 : perm_index(cls.perm_x)];
        const Eigen::MatrixXd& py = tab.phi_y[ident ? 0 : perm_index(cls.perm_y)];

        TriangleVerts tx, ty;
        for (int v = 0; v < 3; ++v) {
          tx[v] = verts_i[cls.perm_x[v]];
          ty[v] = verts_j[cls.perm_y[v]];
        }
        const int np = static_cast<int>(rule.nodes.size());
        kern.resize(np);
        for (int q = 0; q < np; ++q) {
          const Vec2 x = map_to_physical(tx, rule.nodes[q].x_ref);
          const Vec2 y = map_to_physical(ty, rule.nodes[q].y_ref);
          const double dx = x.x - y.x;
          const double dy = x.y - y.y;
          kern(q) = rule.nodes[q].weight *
                    std::exp(minus_s * std::log(dx * dx + dy * dy));
        }
        block.noalias() = px.transpose() * kern.asDiagonal() * py;
      }

      block *= coeff * 4.0 * mesh.area[i] * mesh.area[j];
      if (i == j) {
        gram.matrix.block(i * nk, i * nk, nk, nk) =
            0.5 * (block + block.transpose());
      } else {
        gram.matrix.block(i * nk, j * nk, nk, nk) = block;
        gram.matrix.block(j * nk, i * nk, nk, nk) = block.transpose();
      }
    }
  });
  return gram;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> apply_negative_laplacian(
    const RieszGram& gram, const BlockMassMatrix& mass, const Eigen::VectorXd& px,
    const Eigen::VectorXd& py) {
  return {mass.solve(gram.matrix * px), mass.solve(gram.matrix * py)};
}

namespace {

static_assert(std::endian::native == std::endian::little,
              "gram cache assumes a little-endian host");

constexpr char kMagic[4] = {'R', 'G', 'R', 'M'};
constexpr std::uint32_t kVersion = 1;

}  // namespace

void save_riesz_gram(const std::string& path, const RieszGram& gram) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open gram cache for writing: " + path);
  const std::uint64_t dim = gram.matrix.rows();
  const std::uint32_t k = gram.k, order = gram.quad_order;
  out.write(kMagic, 4);
  out.write(reinterpret_cast<const char*>(&kVersion), 4);
  out.write(reinterpret_cast<const char*>(&gram.mesh_hash), 8);
  out.write(reinterpret_cast<const char*>(&k), 4);
  out.write(reinterpret_cast<const char*>(&order), 4);
  out.write(reinterpret_cast<const char*>(&gram.s), 8);
  out.write(reinterpret_cast<const char*>(&dim), 8);
  for (std::uint64_t r = 0; r < dim; ++r)
    out.write(reinterpret_cast<const char*>(gram.matrix.row(r).eval().data()),
              dim * sizeof(double));
  if (!out) throw std::runtime_error("short write to gram cache: " + path);
}

std::optional<RieszGram> try_load_riesz_gram(const std::string& path,
                                             std::uint64_t mesh_hash, int k,
                                             double s, int quad_order) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  char magic[4];
  std::uint32_t version, file_k, file_order;
  std::uint64_t file_hash, dim;
  double file_s;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&version), 4);
  in.read(reinterpret_cast<char*>(&file_hash), 8);
  in.read(reinterpret_cast<char*>(&file_k), 4);
  in.read(reinterpret_cast<char*>(&file_order), 4);
  in.read(reinterpret_cast<char*>(&file_s), 8);
  in.read(reinterpret_cast<char*>(&dim), 8);
  if (!in || std::memcmp(magic, kMagic, 4) != 0 || version != kVersion)
    return std::nullopt;
  if (file_hash != mesh_hash || file_k != static_cast<std::uint32_t>(k) ||
      file_order != static_cast<std::uint32_t>(quad_order) || file_s != s)
    return std::nullopt;

  RieszGram gram;
  gram.s = s;
  gram.k = k;
  gram.quad_order = quad_order;
  gram.mesh_hash = mesh_hash;
  gram.matrix.resize(dim, dim);
  std::vector<double> row(dim);
  for (std::uint64_t r = 0; r < dim; ++r) {
    in.read(reinterpret_cast<char*>(row.data()), dim * sizeof(double));
    if (!in) return std::nullopt;
    for (std::uint64_t c = 0; c < dim; ++c) gram.matrix(r, c) = row[c];
  }
  return gram;
}

}  // namespace fracldg
