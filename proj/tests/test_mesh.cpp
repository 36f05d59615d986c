#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "fracldg/mesh.hpp"

using namespace fracldg;

namespace {

Mesh two_triangle_square(bool lower_first = true) {
  Mesh mesh;
  mesh.vertices = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  if (lower_first)
    mesh.triangles = {{0, 1, 2}, {0, 2, 3}};
  else
    mesh.triangles = {{0, 2, 3}, {0, 1, 2}};
  return build_edges(std::move(mesh));
}

const Edge& find_interior_edge(const Mesh& mesh) {
  for (const Edge& e : mesh.edges)
    if (e.cls == EdgeClass::Interior) return e;
  throw std::runtime_error("no interior edge");
}

}  // namespace

TEST_SUITE("mesh") {

TEST_CASE("single triangle from text") {
  std::istringstream in(
      "# one reference triangle\n"
      "$Nodes\n3\n1 0 0\n2 1 0\n3 0 1\n"
      "$Triangles\n1\n1 1 2 3\n");
  const Mesh mesh = load_mesh(in);
  CHECK(mesh.num_triangles() == 1);
  CHECK(mesh.num_edges() == 3);
  for (const Edge& e : mesh.edges) CHECK(e.cls == EdgeClass::Boundary);
  CHECK(mesh.h_global == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("two triangles sharing a diagonal") {
  const Mesh mesh = two_triangle_square();
  int interior = 0, boundary = 0;
  for (const Edge& e : mesh.edges)
    (e.cls == EdgeClass::Interior ? interior : boundary)++;
  CHECK(interior == 1);
  CHECK(boundary == 4);
  const Edge& diag = find_interior_edge(mesh);
  CHECK(norm(diag.normal) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("vertex index out of range is a parse error") {
  std::istringstream in(
      "$Nodes\n3\n1 0 0\n2 1 0\n3 0 1\n"
      "$Triangles\n1\n1 1 2 7\n");
  CHECK_THROWS_AS(load_mesh(in), MeshError);
}

TEST_CASE("edge shared by more than two triangles is a topology error") {
  Mesh mesh;
  mesh.vertices = {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {-1, 1}};
  mesh.triangles = {{0, 1, 2}, {0, 2, 3}, {0, 2, 4}};
  CHECK_THROWS_AS(build_edges(std::move(mesh)), MeshError);
}

TEST_CASE("beta signs and boundary classification") {
  // Owner of the diagonal is the lower triangle; its outward normal across
  // the diagonal is (-1,1)/sqrt(2), so the tie-break gives -1/2.
  const Mesh lower = two_triangle_square(true);
  const Edge& diag_lower = find_interior_edge(lower);
  CHECK(diag_lower.normal.x == doctest::Approx(-std::numbers::sqrt2 / 2).epsilon(1e-14));
  CHECK(diag_lower.beta_dot_n == -0.5);
  CHECK(diag_lower.boundary_sign == BoundarySign::None);

  // With the upper triangle as owner the normal flips to (1,-1)/sqrt(2) and
  // the tie-break picks +1/2.
  const Mesh upper = two_triangle_square(false);
  const Edge& diag_upper = find_interior_edge(upper);
  CHECK(diag_upper.normal.x == doctest::Approx(std::numbers::sqrt2 / 2).epsilon(1e-14));
  CHECK(diag_upper.beta_dot_n == 0.5);

  for (const Edge& e : lower.edges) {
    if (e.cls != EdgeClass::Boundary) continue;
    const double s = e.normal.x + e.normal.y;
    CHECK(e.beta_dot_n == (s > 0 ? 0.5 : -0.5));
    CHECK(e.boundary_sign == (s > 0 ? BoundarySign::Plus : BoundarySign::Minus));
  }
}

TEST_CASE("disk mesh level 0") {
  const Mesh mesh = generate_disk_mesh(0);
  CHECK(mesh.num_triangles() == 50);
  CHECK(mesh.h_global > 0.45);
  CHECK(mesh.h_global < 0.7);
  for (int t = 0; t < mesh.num_triangles(); ++t)
    CHECK(signed_area2(mesh.triangle_verts(t)) > 0);
  for (const Edge& e : mesh.edges) {
    if (e.cls != EdgeClass::Boundary) continue;
    for (int v : e.v)
      CHECK(norm(mesh.vertices[v]) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("disk area defect shrinks with refinement") {
  double prev_defect = 4.0;
  for (int level = 0; level <= 3; ++level) {
    const Mesh mesh = generate_disk_mesh(level);
    double area = 0;
    for (double a : mesh.area) area += a;
    const double defect = std::numbers::pi - area;
    CHECK(defect > 0);
    CHECK(defect < prev_defect);
    prev_defect = defect;
    if (level == 3) CHECK(defect < 0.01);
  }
}

TEST_CASE("refinement roughly halves h") {
  double prev = generate_disk_mesh(0).h_global;
  for (int level = 1; level <= 3; ++level) {
    const double h = generate_disk_mesh(level).h_global;
    CHECK(h / prev > 0.4);
    CHECK(h / prev < 0.6);
    prev = h;
  }
}

TEST_CASE("boundary edges close up and partition by sign") {
  const Mesh mesh = generate_disk_mesh(1);
  Vec2 total{0, 0};
  for (const Edge& e : mesh.edges) {
    if (e.cls == EdgeClass::Boundary) {
      total = total + e.length * e.normal;
      CHECK(e.boundary_sign != BoundarySign::None);
      CHECK(e.neighbor == -1);
    } else {
      CHECK(e.boundary_sign == BoundarySign::None);
      CHECK(e.owner < e.neighbor);
    }
  }
  CHECK(std::abs(total.x) < 1e-12);
  CHECK(std::abs(total.y) < 1e-12);
}

TEST_CASE("stored normal points from owner toward neighbor") {
  const Mesh mesh = generate_disk_mesh(1);
  for (const Edge& e : mesh.edges) {
    const Vec2 mid = 0.5 * (mesh.vertices[e.v[0]] + mesh.vertices[e.v[1]]);
    CHECK(dot(e.normal, mid - triangle_centroid(mesh.triangle_verts(e.owner))) > 0);
    if (e.cls == EdgeClass::Interior)
      CHECK(dot(e.normal, mid - triangle_centroid(mesh.triangle_verts(e.neighbor))) < 0);
  }
}

TEST_CASE("save and load round-trip") {
  const Mesh mesh = generate_disk_mesh(0);
  std::stringstream buf;
  save_mesh(mesh, buf);
  const Mesh again = load_mesh(buf);
  REQUIRE(again.num_vertices() == mesh.num_vertices());
  REQUIRE(again.num_triangles() == mesh.num_triangles());
  for (int i = 0; i < mesh.num_vertices(); ++i) {
    CHECK(again.vertices[i].x == mesh.vertices[i].x);
    CHECK(again.vertices[i].y == mesh.vertices[i].y);
  }
  CHECK(again.triangles == mesh.triangles);
  CHECK(again.h_global == mesh.h_global);
  CHECK(mesh_content_hash(again) == mesh_content_hash(mesh));

  // The writer is deterministic: a rewrite reproduces the bytes.
  std::stringstream buf2;
  save_mesh(again, buf2);
  std::stringstream buf3;
  save_mesh(mesh, buf3);
  CHECK(buf2.str() == buf3.str());
}

TEST_CASE("locate triangle") {
  const Mesh mesh = generate_disk_mesh(1);
  const int t = locate_triangle(mesh, {0, 0});
  REQUIRE(t >= 0);
  const Vec2 r = map_to_reference(mesh.triangle_verts(t), {0, 0});
  CHECK(r.x >= -1e-12);
  CHECK(r.y >= -1e-12);
  CHECK(r.x + r.y <= 1 + 1e-12);
  CHECK(locate_triangle(mesh, {2, 2}) == -1);
}

}  // TEST_SUITE
