#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracldg/geometry.hpp"

namespace fracldg {

struct MeshError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class EdgeClass { Interior, Boundary };

// Boundary classification by the sign of 1.n (owner-side outward normal,
// sigma tie-break applied when 1.n = 0).
enum class BoundarySign { None, Plus, Minus };

struct Edge {
  std::array<int, 2> v = {-1, -1};  // endpoint vertex indices, v[0] < v[1]
  int owner = -1;                   // incident triangle with the smaller index
  int neighbor = -1;                // -1 for boundary edges
  Vec2 normal;                      // unit normal pointing out of the owner
  double length = 0.0;
  EdgeClass cls = EdgeClass::Boundary;
  double beta_dot_n = 0.0;          // +1/2 or -1/2
  BoundarySign boundary_sign = BoundarySign::None;
};

struct Mesh {
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> triangles;  // counterclockwise
  std::vector<Edge> edges;
  std::vector<double> area;      // per triangle
  std::vector<double> diameter;  // per triangle, h_j
  double h_global = 0.0;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_triangles() const { return static_cast<int>(triangles.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }

  TriangleVerts triangle_verts(int t) const {
    const auto& tri = triangles[t];
    return {vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]};
  }
};

// Tie-break parameter sigma for edges with 1.n = 0 (beta uses 1_sigma =
// [1+sigma, 1-sigma]).
inline constexpr double kBetaTieSigma = 0.5;

// Normalizes triangle orientation to counterclockwise and rebuilds all edge
// topology, normals, beta signs and boundary classification from scratch.
// Throws MeshError on non-conforming input (an edge shared by >2 triangles,
// vertex indices out of range, degenerate triangles).
Mesh build_edges(Mesh mesh);

// Structured triangulation of the unit disk: a uniform grid on [-1,1]^2 split
// into triangles (diagonals chosen symmetrically per quadrant), vertices
// mapped radially by (x,y) -> (x,y)*max(|x|,|y|)/|(x,y)|, square-boundary
// vertices landing exactly on the unit circle. h_global roughly halves per
// refinement level.
Mesh generate_disk_mesh(int refinement_level);

// Mesh file format: "$Nodes", count, "id x y" lines (1-based sequential ids),
// then "$Triangles", count, "id v1 v2 v3" lines. '#' starts a comment.
Mesh load_mesh(std::istream& in);
Mesh load_mesh_file(const std::string& path);
void save_mesh(const Mesh& mesh, std::ostream& out);

// Index of a triangle containing p (barycentric tolerance 1e-12), or -1.
int locate_triangle(const Mesh& mesh, Vec2 p);

// Content hash over vertices and triangles, used to key the Gram cache.
std::uint64_t mesh_content_hash(const Mesh& mesh);

}  // namespace fracldg
