#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "litt/fem.hpp"
#include "litt/mesh.hpp"

using namespace litt;
using std::numbers::pi;

namespace {

const AxiMesh& coarse_mesh() {
  static const AxiMesh mesh = build_mesh(Geometry{}, 4e-3);
  return mesh;
}

}  // namespace

TEST_CASE("graded coordinates") {
  const auto x = graded_coordinates(0.0, 0.06, 0.5e-3, 2e-3, 2e-3);
  REQUIRE(x.size() >= 3);
  CHECK(x.front() == 0.0);
  CHECK(x.back() == 0.06);
  for (std::size_t k = 1; k < x.size(); ++k) {
    CHECK(x[k] > x[k - 1]);
    CHECK(x[k] - x[k - 1] <= 2e-3 * (1 + 1e-12));
  }
  for (std::size_t k = 2; k < x.size(); ++k) {
    const double ratio = (x[k] - x[k - 1]) / (x[k - 1] - x[k - 2]);
    CHECK(ratio <= 1.2 + 1e-9);
    CHECK(ratio >= 1.0 / 1.2 - 1e-9);
  }
  CHECK(x[1] - x[0] <= 0.5e-3 * 1.2);
}

TEST_CASE("domain volume and boundary measures are exact") {
  const Geometry g;
  const auto& mesh = coarse_mesh();
  const double R = g.domain_radius, H = g.domain_height, a = g.applicator_radius;
  const double L = g.diffuser_length, depth = g.applicator_depth;
  CHECK(mesh.volume() == doctest::Approx(pi * (R * R * H - a * a * depth)).epsilon(1e-12));
  CHECK(mesh.boundary_measure(BoundaryTag::rad) == doctest::Approx(2 * pi * a * L).epsilon(1e-12));
  CHECK(mesh.boundary_measure(BoundaryTag::cool) ==
        doctest::Approx(pi * a * a + 2 * pi * a * (depth - L)).epsilon(1e-12));
  CHECK(mesh.boundary_measure(BoundaryTag::amb) ==
        doctest::Approx(2 * pi * R * H + pi * R * R + pi * (R * R - a * a)).epsilon(1e-12));
  CHECK(mesh.boundary_measure(BoundaryTag::axis) == 0.0);
  const auto V = lumped_volumes(mesh);
  double sum = 0.0;
  for (double v : V) {
    CHECK(v > 0.0);
    sum += v;
  }
  CHECK(sum == doctest::Approx(mesh.volume()).epsilon(1e-12));
}

TEST_CASE("mesh resolution and tags") {
  const auto mesh = build_mesh(Geometry{}, 2e-3);
  CHECK(mesh.max_edge_length() <= std::sqrt(2.0) * 2e-3 * (1 + 1e-12));
  for (const auto& e : mesh.boundary_edges()) {
    const auto& p = mesh.nodes()[e.nodes[0]];
    const auto& q = mesh.nodes()[e.nodes[1]];
    if (e.tag == BoundaryTag::axis) {
      CHECK(p.r == 0.0);
      CHECK(q.r == 0.0);
    }
    if (e.tag == BoundaryTag::rad) {
      CHECK(p.r == doctest::Approx(1.5e-3));
      CHECK(q.r == doctest::Approx(1.5e-3));
      CHECK(std::min(p.z, q.z) >= -1e-15);
      CHECK(std::max(p.z, q.z) <= 30e-3 + 1e-15);
    }
  }
  CHECK(parse_tag("rad") == BoundaryTag::rad);
  CHECK(to_string(BoundaryTag::amb) == "amb");
  CHECK_THROWS_AS(parse_tag("wall"), std::invalid_argument);
}

TEST_CASE("mesh constructor rejects broken input") {
  const std::vector<Point> nodes = {{0, 0}, {1, 0}, {0, 1}};
  const std::vector<BoundaryEdge> edges = {
      {{0, 1}, BoundaryTag::amb}, {{1, 2}, BoundaryTag::amb}, {{2, 0}, BoundaryTag::axis}};
  CHECK_NOTHROW(AxiMesh(nodes, {{0, 1, 2}}, edges));
  CHECK_THROWS_AS(AxiMesh(nodes, {{0, 2, 1}}, edges), MeshError);
  CHECK_THROWS_AS(AxiMesh(nodes, {{0, 1, 2}}, {edges[0], edges[1]}), MeshError);
  CHECK_THROWS_AS(AxiMesh(nodes, {{0, 1, 2}}, {edges[0], edges[1], {{2, 0}, BoundaryTag::amb}, edges[2]}),
                  MeshError);
  CHECK_THROWS_AS(AxiMesh({{-1, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}}, edges), MeshError);
  CHECK_THROWS_AS(AxiMesh(nodes, {{0, 1, 2}}, {edges[0], {{1, 2}, BoundaryTag::axis}, edges[2]}), MeshError);
}

TEST_CASE("stiffness is a symmetric M-matrix with constants in its kernel") {
  const auto& mesh = coarse_mesh();
  const std::vector<double> kappa(mesh.num_nodes(), 0.518);
  const auto K = assemble_stiffness(mesh, kappa);
  CHECK(K.asymmetry() <= 1e-14 * K.norm());
  const auto& rp = K.row_ptr();
  for (int i = 0; i < K.size(); ++i) {
    double row = 0.0;
    for (int k = rp[i]; k < rp[i + 1]; ++k) {
      row += K.values()[k];
      if (K.cols()[k] != i) CHECK(K.values()[k] <= 1e-14 * K.norm());
    }
    CHECK(std::abs(row) <= 1e-12 * K.norm());
  }
  CHECK(K.at(0, 0) > 0.0);
}

TEST_CASE("stiffness energy of linear fields") {
  const auto& mesh = coarse_mesh();
  const double kappa = 0.7;
  const std::vector<double> c(mesh.num_nodes(), kappa);
  const auto K = assemble_stiffness(mesh, c);
  std::vector<double> u(mesh.num_nodes()), v(mesh.num_nodes());
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] = mesh.nodes()[i].z;
    v[i] = mesh.nodes()[i].r;
  }
  CHECK(dot(u, K * u) == doctest::Approx(kappa * mesh.volume()).epsilon(1e-10));
  CHECK(dot(v, K * v) == doctest::Approx(kappa * mesh.volume()).epsilon(1e-10));
  CHECK(std::abs(dot(u, K * v)) <= 1e-12 * kappa * mesh.volume());
  std::vector<double> bad(mesh.num_nodes(), 1.0);
  bad[3] = 0.0;
  CHECK_THROWS_AS(assemble_stiffness(mesh, bad), std::invalid_argument);
  bad.assign(mesh.num_nodes(), -1.0);
  CHECK_THROWS_AS(assemble_stiffness(mesh, bad), std::invalid_argument);
}

TEST_CASE("lumped mass") {
  const auto& mesh = coarse_mesh();
  const std::vector<double> c(mesh.num_nodes(), 2.0);
  const auto M = assemble_mass_lumped(mesh, c);
  const auto V = lumped_volumes(mesh);
  const auto d = lumped_mass_diagonal(mesh, c);
  CHECK(M.nnz() == mesh.num_nodes());
  for (std::size_t i = 0; i < V.size(); ++i) {
    CHECK(d[i] == doctest::Approx(2.0 * V[i]));
    CHECK(M.at(int(i), int(i)) == d[i]);
  }
}

TEST_CASE("interpolation reproduces affine fields") {
  const auto& mesh = coarse_mesh();
  std::vector<double> f(mesh.num_nodes());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = 3.0 + 200.0 * mesh.nodes()[i].r - 50.0 * mesh.nodes()[i].z;
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ur(0.0, 0.06), uz(-0.07, 0.05);
  int tested = 0;
  while (tested < 200) {
    const Point p{ur(rng), uz(rng)};
    if (p.r < 1.5e-3 && p.z > 0.0) continue;
    CHECK(interpolate_at(mesh, f, p) == doctest::Approx(3.0 + 200.0 * p.r - 50.0 * p.z).epsilon(1e-12));
    ++tested;
  }
  const PointProbe probe(mesh, {11.2e-3, 23.8e-3});
  CHECK(probe(f) == doctest::Approx(3.0 + 200.0 * 11.2e-3 - 50.0 * 23.8e-3).epsilon(1e-12));
  CHECK(probe.point().r == 11.2e-3);
}

TEST_CASE("probe outside the tissue is rejected") {
  const auto& mesh = coarse_mesh();
  CHECK_THROWS_AS(PointProbe(mesh, {0.5e-3, 10e-3}), OutsideDomain);
  CHECK_THROWS_AS(PointProbe(mesh, {0.07, 0.0}), OutsideDomain);
  try {
    PointProbe(mesh, {0.07, 0.0});
  } catch (const OutsideDomain& e) {
    CHECK(e.point().r == 0.07);
  }
  CHECK(mesh.locate({0.5e-3, 10e-3}).triangle == -1);
}

TEST_CASE("integration with and without mask") {
  const auto& mesh = coarse_mesh();
  const std::vector<double> one(mesh.num_nodes(), 1.0);
  CHECK(integrate(mesh, one) == doctest::Approx(mesh.volume()).epsilon(1e-12));
  std::vector<char> mask(mesh.num_nodes(), 0);
  const auto V = lumped_volumes(mesh);
  double expected = 0.0;
  for (std::size_t i = 0; i < mask.size(); i += 3) {
    mask[i] = 1;
    expected += V[i];
  }
  CHECK(integrate(V, one, mask) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("boundary operator") {
  const auto& mesh = coarse_mesh();
  const BoundaryOperator op(mesh, {{BoundaryTag::amb, 2.0}, {BoundaryTag::rad, 0.0}});
  const auto load = op.load(BoundaryTag::amb, 3.0);
  double s = 0.0, d = 0.0;
  for (double v : load) s += v;
  for (double v : op.diagonal()) d += v;
  CHECK(s == doctest::Approx(6.0 * mesh.boundary_measure(BoundaryTag::amb)).epsilon(1e-12));
  CHECK(d == doctest::Approx(2.0 * mesh.boundary_measure(BoundaryTag::amb)).epsilon(1e-12));
  CHECK(op.matrix().nnz() <= mesh.num_nodes());
  CHECK_THROWS_AS(op.load(BoundaryTag::cool, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(BoundaryOperator(mesh, {{BoundaryTag::amb, -1.0}}), std::invalid_argument);
  const auto rad = lumped_boundary_measure(mesh, BoundaryTag::rad);
  double r = 0.0;
  for (double v : rad) r += v;
  CHECK(r == doctest::Approx(mesh.boundary_measure(BoundaryTag::rad)).epsilon(1e-12));
}
