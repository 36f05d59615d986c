#include "fracldg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace fracldg {

namespace {

double beta_sign_for_normal(Vec2 n) {
  const double s = n.x + n.y;
  if (std::abs(s) > 1e-12) return s > 0 ? 0.5 : -0.5;
  const double s_tie = (1.0 + kBetaTieSigma) * n.x + (1.0 - kBetaTieSigma) * n.y;
  return s_tie > 0 ? 0.5 : -0.5;
}

}  // namespace

Mesh build_edges(Mesh mesh) {
  const int nv = mesh.num_vertices();
  const int nt = mesh.num_triangles();

  for (int t = 0; t < nt; ++t) {
    for (int v : mesh.triangles[t]) {
      if (v < 0 || v >= nv)
        throw MeshError("triangle " + std::to_string(t) +
                        " references vertex index " + std::to_string(v) +
                        " outside [0, " + std::to_string(nv) + ")");
    }
    auto& tri = mesh.triangles[t];
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
      throw MeshError("triangle " + std::to_string(t) + " has repeated vertices");
    TriangleVerts verts = mesh.triangle_verts(t);
    const double a2 = signed_area2(verts);
    if (a2 == 0.0)
      throw MeshError("triangle " + std::to_string(t) + " is degenerate");
    if (a2 < 0.0) std::swap(tri[1], tri[2]);
  }

  mesh.area.resize(nt);
  mesh.diameter.resize(nt);
  mesh.h_global = 0.0;
  for (int t = 0; t < nt; ++t) {
    const TriangleVerts verts = mesh.triangle_verts(t);
    mesh.area[t] = triangle_area(verts);
    mesh.diameter[t] = triangle_diameter(verts);
    mesh.h_global = std::max(mesh.h_global, mesh.diameter[t]);
  }

  // Collect edges keyed by their sorted endpoint pair; owner is the incident
  // triangle with the smaller index.
  std::map<std::array<int, 2>, std::array<int, 2>> incident;  // key -> {tri, tri}
  for (int t = 0; t < nt; ++t) {
    const auto& tri = mesh.triangles[t];
    for (int e = 0; e < 3; ++e) {
      std::array<int, 2> key = {tri[e], tri[(e + 1) % 3]};
      if (key[0] > key[1]) std::swap(key[0], key[1]);
      auto [it, inserted] = incident.try_emplace(key, std::array<int, 2>{t, -1});
      if (!inserted) {
        if (it->second[1] != -1)
          throw MeshError("edge (" + std::to_string(key[0]) + "," +
                          std::to_string(key[1]) + ") is shared by more than 2 triangles");
        it->second[1] = t;
      }
    }
  }

  mesh.edges.clear();
  mesh.edges.reserve(incident.size());
  for (const auto& [key, tris] : incident) {
    Edge edge;
    edge.v = key;
    edge.owner = tris[0];
    edge.neighbor = tris[1];
    edge.cls = tris[1] == -1 ? EdgeClass::Boundary : EdgeClass::Interior;

    const Vec2 a = mesh.vertices[key[0]];
    const Vec2 b = mesh.vertices[key[1]];
    const Vec2 tangent = b - a;
    edge.length = norm(tangent);
    Vec2 n = Vec2{tangent.y, -tangent.x} / edge.length;
    const Vec2 mid = 0.5 * (a + b);
    const Vec2 centroid = triangle_centroid(mesh.triangle_verts(edge.owner));
    if (dot(n, mid - centroid) < 0) n = -1.0 * n;
    edge.normal = n;

    edge.beta_dot_n = beta_sign_for_normal(n);
    if (edge.cls == EdgeClass::Boundary) {
      edge.boundary_sign =
          edge.beta_dot_n > 0 ? BoundarySign::Plus : BoundarySign::Minus;
    }
    mesh.edges.push_back(edge);
  }
  return mesh;
}

Mesh generate_disk_mesh(int refinement_level) {
  if (refinement_level < 0) throw MeshError("refinement level must be >= 0");
  const int kBaseCells = 5;  // level 0 gives h_global near 0.6
  const int n = kBaseCells << refinement_level;

  Mesh mesh;
  mesh.vertices.reserve((n + 1) * (n + 1));
  const auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      const double x = -1.0 + 2.0 * i / n;
      const double y = -1.0 + 2.0 * j / n;
      const double r = std::hypot(x, y);
      Vec2 v{x, y};
      if (r > 0.0) {
        const double m = std::max(std::abs(x), std::abs(y));
        v = Vec2{x, y} * (m / r);
        if (i == 0 || i == n || j == 0 || j == n) v = v / norm(v);
      }
      mesh.vertices.push_back(v);
    }
  }

  mesh.triangles.reserve(2 * n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int bl = vid(i, j), br = vid(i + 1, j);
      const int tl = vid(i, j + 1), tr = vid(i + 1, j + 1);
      const double cx = -1.0 + 2.0 * (i + 0.5) / n;
      const double cy = -1.0 + 2.0 * (j + 0.5) / n;
      // Diagonals aligned with the map's kink lines y = +/-x.
      if (cx * cy >= 0.0) {
        mesh.triangles.push_back({bl, br, tr});
        mesh.triangles.push_back({bl, tr, tl});
      } else {
        mesh.triangles.push_back({bl, br, tl});
        mesh.triangles.push_back({br, tr, tl});
      }
    }
  }
  return build_edges(std::move(mesh));
}

namespace {

// Reads the next content line (comments after '#' stripped, blanks skipped).
bool next_line(std::istream& in, std::string& line, int& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto pos = line.find('#'); pos != std::string::npos)
      line.erase(pos);
    if (line.find_first_not_of(" \t\r\n") != std::string::npos) return true;
  }
  return false;
}

[[noreturn]] void parse_fail(int line_no, const std::string& what) {
  throw MeshError("mesh parse error at line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

Mesh load_mesh(std::istream& in) {
  Mesh mesh;
  std::string line;
  int line_no = 0;

  if (!next_line(in, line, line_no) || line.find("$Nodes") == std::string::npos)
    parse_fail(line_no, "expected $Nodes");
  if (!next_line(in, line, line_no)) parse_fail(line_no, "expected node count");
  long node_count = -1;
  {
    std::istringstream ss(line);
    if (!(ss >> node_count) || node_count < 0) parse_fail(line_no, "bad node count");
  }
  mesh.vertices.reserve(node_count);
  for (long i = 0; i < node_count; ++i) {
    if (!next_line(in, line, line_no)) parse_fail(line_no, "unexpected end of node list");
    std::istringstream ss(line);
    long id;
    double x, y;
    if (!(ss >> id >> x >> y)) parse_fail(line_no, "expected 'id x y'");
    if (id != i + 1) parse_fail(line_no, "node ids must be sequential from 1");
    mesh.vertices.push_back({x, y});
  }

  if (!next_line(in, line, line_no) || line.find("$Triangles") == std::string::npos)
    parse_fail(line_no, "expected $Triangles");
  if (!next_line(in, line, line_no)) parse_fail(line_no, "expected triangle count");
  long tri_count = -1;
  {
    std::istringstream ss(line);
    if (!(ss >> tri_count) || tri_count < 0) parse_fail(line_no, "bad triangle count");
  }
  mesh.triangles.reserve(tri_count);
  for (long i = 0; i < tri_count; ++i) {
    if (!next_line(in, line, line_no)) parse_fail(line_no, "unexpected end of triangle list");
    std::istringstream ss(line);
    long id, v1, v2, v3;
    if (!(ss >> id >> v1 >> v2 >> v3)) parse_fail(line_no, "expected 'id v1 v2 v3'");
    if (id != i + 1) parse_fail(line_no, "triangle ids must be sequential from 1");
    for (long v : {v1, v2, v3})
      if (v < 1 || v > node_count)
        parse_fail(line_no, "vertex index " + std::to_string(v) +
                                " outside [1, " + std::to_string(node_count) + "]");
    mesh.triangles.push_back({static_cast<int>(v1 - 1), static_cast<int>(v2 - 1),
                              static_cast<int>(v3 - 1)});
  }
  return build_edges(std::move(mesh));
}

Mesh load_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MeshError("cannot open mesh file: " + path);
  return load_mesh(in);
}

void save_mesh(const Mesh& mesh, std::ostream& out) {
  char buf[80];
  out << "$Nodes\n" << mesh.num_vertices() << "\n";
  for (int i = 0; i < mesh.num_vertices(); ++i) {
    std::snprintf(buf, sizeof(buf), "%d %.17g %.17g\n", i + 1, mesh.vertices[i].x,
                  mesh.vertices[i].y);
    out << buf;
  }
  out << "$Triangles\n" << mesh.num_triangles() << "\n";
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    out << t + 1 << ' ' << tri[0] + 1 << ' ' << tri[1] + 1 << ' ' << tri[2] + 1 << '\n';
  }
}

int locate_triangle(const Mesh& mesh, Vec2 p) {
  constexpr double tol = 1e-12;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const Vec2 r = map_to_reference(mesh.triangle_verts(t), p);
    if (r.x >= -tol && r.y >= -tol && r.x + r.y <= 1.0 + tol) return t;
  }
  return -1;
}

std::uint64_t mesh_content_hash(const Mesh& mesh) {
  std::uint64_t h = 14695981039346656037ULL;  // FNV-1a
  const auto mix = [&h](const void* data, size_t n) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < n; ++i) {
      h ^= bytes[i];
      h *= 1099511628211ULL;
    }
  };
  for (const Vec2& v : mesh.vertices) mix(&v, sizeof(v));
  for (const auto& t : mesh.triangles) mix(t.data(), sizeof(t));
  return h;
}

}  // namespace fracldg
