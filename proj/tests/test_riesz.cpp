#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "fracldg/riesz.hpp"
#include "fracldg/special_functions.hpp"
#include "oracles.hpp"

using namespace fracldg;

namespace {

Mesh two_triangle_mesh(double scale = 1.0) {
  Mesh mesh;
  mesh.vertices = {{0, 0}, {scale, 0}, {scale, scale}, {0, scale}};
  mesh.triangles = {{0, 1, 2}, {0, 2, 3}};
  return build_edges(std::move(mesh));
}

}  // namespace

TEST_SUITE("riesz") {

TEST_CASE("fractional coefficients") {
  CHECK(frac_coefficient(2, 0.5).value ==
        doctest::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-13));
  CHECK(frac_coefficient(2, -0.5).value ==
        doctest::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-13));
  CHECK(frac_coefficient(2, -0.5).value > 0);

  // Linear vanishing as the order goes to zero.
  const double v1 = frac_coefficient(2, 1e-3).value;
  const double v2 = frac_coefficient(2, 2e-3).value;
  CHECK(v2 / v1 == doctest::Approx(2.0).epsilon(1e-2));

  CHECK_THROWS_AS(frac_coefficient(2, 0.0), std::domain_error);
  CHECK_THROWS_AS(frac_coefficient(2, 1.0), std::domain_error);
  CHECK_THROWS_AS(frac_coefficient(2, -1.2), std::domain_error);
  // The 1D constant at order -1/2 blows up (Gamma(0) pole).
  CHECK_THROWS_AS(frac_coefficient(1, -0.5), std::domain_error);
}

TEST_CASE("riesz potential of the disk at the origin") {
  CHECK(riesz_potential_disk(0.0, 0.5) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(riesz_potential_disk(1.0, 0.5) == doctest::Approx(0.5).epsilon(1e-13));
  for (double s : {0.3, 0.8}) {
    const double expected =
        std::pow(2.0, 2.0 * s - 2.0) * gamma_fn(s) / gamma_fn(2.0 - s);
    CHECK(riesz_potential_disk(0.0, s) == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("gram matrix is exactly symmetric and PSD up to quadrature noise") {
  const Mesh mesh = generate_disk_mesh(0);
  const ReferenceBasis basis(1);
  const RieszGram gram = assemble_riesz_gram(mesh, basis, 0.5, {}, 2);
  CHECK((gram.matrix - gram.matrix.transpose()).cwiseAbs().maxCoeff() == 0.0);

  const double floor = 1e-10 * gram.matrix.cwiseAbs().maxCoeff();
  std::mt19937 rng(3);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXd x(gram.matrix.rows());
    for (int i = 0; i < x.size(); ++i) x(i) = gauss(rng);
    CHECK(x.dot(gram.matrix * x) >= -floor * x.squaredNorm());
  }
}

TEST_CASE("gram entries agree with the pair oracles") {
  // Two elements sharing an edge: every entry is a weighted pair integral.
  const Mesh mesh = two_triangle_mesh();
  const ReferenceBasis basis(1);
  const double s = 0.6;
  const RieszGram gram = assemble_riesz_gram(mesh, basis, s, {}, 1);
  const double c = frac_coefficient(2, s - 1.0).value;

  // Sum of all entries = c * IntInt over (T0 u T1)^2 of the constant pair.
  const double t00 = oracle::covariogram_pair_integral(
      mesh.triangle_verts(0), mesh.triangle_verts(0), s);
  const double t11 = oracle::covariogram_pair_integral(
      mesh.triangle_verts(1), mesh.triangle_verts(1), s);
  const double t01 = oracle::covariogram_pair_integral(
      mesh.triangle_verts(0), mesh.triangle_verts(1), s);
  const double want = c * (t00 + t11 + 2.0 * t01);
  const double got = gram.matrix.sum();
  CHECK(got == doctest::Approx(want).epsilon(2e-6));
}

TEST_CASE("scale covariance") {
  const ReferenceBasis basis(1);
  const double s = 0.7;
  const RieszGram small = assemble_riesz_gram(two_triangle_mesh(1.0), basis, s, {}, 1);
  const RieszGram big = assemble_riesz_gram(two_triangle_mesh(2.0), basis, s, {}, 1);
  const double factor = std::pow(2.0, 4.0 - 2.0 * s);
  CHECK((big.matrix - factor * small.matrix).cwiseAbs().maxCoeff() <
        1e-12 * big.matrix.cwiseAbs().maxCoeff());
}

TEST_CASE("assembly is deterministic across thread counts") {
  const Mesh mesh = generate_disk_mesh(0);
  const ReferenceBasis basis(1);
  const RieszGram a = assemble_riesz_gram(mesh, basis, 0.4, {}, 1);
  const RieszGram b = assemble_riesz_gram(mesh, basis, 0.4, {}, 3);
  CHECK((a.matrix - b.matrix).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("global constant energy matches the disk closed form") {
  // 1^T S 1 = c_{2,s-1} IntInt over the mesh polygon; compare against the
  // exact disk value (the area defect dominates the tolerance).
  const Mesh mesh = generate_disk_mesh(1);
  const ReferenceBasis basis(1);
  const double s = 0.5;
  const RieszGram gram = assemble_riesz_gram(mesh, basis, s, {}, 4);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(gram.matrix.rows());
  const double got = ones.dot(gram.matrix * ones);

  const double closed = 8.0 / 3.0;  // pi 2^(2s-2) G(s)G(3-2s)/(G(2-s)^2 G(3-s)) at s=1/2
  const double quadrature = oracle::disk_pair_energy(s);
  CHECK(quadrature == doctest::Approx(closed).epsilon(1e-4));
  CHECK(got == doctest::Approx(closed).epsilon(0.03));
}

TEST_CASE("negative-order laplacian application") {
  const Mesh mesh = generate_disk_mesh(1);
  const ReferenceBasis basis(1);
  const double s = 0.5;
  const RieszGram gram = assemble_riesz_gram(mesh, basis, s, {}, 4);
  const BlockMassMatrix mass(mesh, basis);
  const int n = gram.matrix.rows();

  // Zero in, zero out; x-only field keeps the y component zero.
  const auto [zx, zy] = apply_negative_laplacian(gram, mass, Eigen::VectorXd::Zero(n),
                                                 Eigen::VectorXd::Zero(n));
  CHECK(zx.cwiseAbs().maxCoeff() == 0.0);
  CHECK(zy.cwiseAbs().maxCoeff() == 0.0);

  Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  const auto [qx, qy] =
      apply_negative_laplacian(gram, mass, ones, Eigen::VectorXd::Zero(n));
  CHECK(qy.cwiseAbs().maxCoeff() == 0.0);

  // Constant field (1,0): q_x at the origin approaches the exact disk value.
  const int t = locate_triangle(mesh, {0, 0});
  REQUIRE(t >= 0);
  const Vec2 ref = map_to_reference(mesh.triangle_verts(t), {0, 0});
  const double at_origin =
      basis.eval(ref).dot(qx.segment(t * basis.size(), basis.size()));
  CHECK(at_origin == doctest::Approx(riesz_potential_disk(0.0, s)).epsilon(0.05));
}

TEST_CASE("gram cache round-trip and key checks") {
  const Mesh mesh = generate_disk_mesh(0);
  const ReferenceBasis basis(1);
  const RieszGram gram = assemble_riesz_gram(mesh, basis, 0.5, {}, 2);
  const std::string path = "gram_cache_test.rgrm";
  save_riesz_gram(path, gram);
  const auto loaded =
      try_load_riesz_gram(path, gram.mesh_hash, gram.k, gram.s, gram.quad_order);
  REQUIRE(loaded.has_value());
  CHECK((loaded->matrix - gram.matrix).cwiseAbs().maxCoeff() == 0.0);

  CHECK(!try_load_riesz_gram(path, gram.mesh_hash + 1, gram.k, gram.s, gram.quad_order));
  CHECK(!try_load_riesz_gram(path, gram.mesh_hash, gram.k, 0.25, gram.quad_order));
  CHECK(!try_load_riesz_gram("missing_file.rgrm", gram.mesh_hash, gram.k, gram.s,
                             gram.quad_order));
  std::remove(path.c_str());
}

}  // TEST_SUITE
