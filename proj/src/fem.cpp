#include "litt/fem.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace litt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string describe(Point p) {
  std::ostringstream s;
  s.precision(6);
  s << "point (r=" << p.r << " m, z=" << p.z << " m) lies outside the mesh";
  return s.str();
}

void check_size(const AxiMesh& mesh, std::span<const double> f, const char* what) {
  if (f.size() != mesh.num_nodes())
    throw std::invalid_argument(std::string(what) + ": field size does not match node count");
}

void check_positive(std::span<const double> coeff, const char* what) {
  for (double c : coeff)
    if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument(std::string(what) + ": coefficient must be > 0");
}

}  // namespace

OutsideDomain::OutsideDomain(Point p) : std::out_of_range(describe(p)), p_(p) {}

std::vector<double> lumped_volumes(const AxiMesh& mesh) {
  std::vector<double> v(mesh.num_nodes(), 0.0);
  const auto& nodes = mesh.nodes();
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles()[t];
    const double r_bar = (nodes[tri[0]].r + nodes[tri[1]].r + nodes[tri[2]].r) / 3.0;
    const double share = kTwoPi * r_bar * mesh.triangle_area(t) / 3.0;
    for (int k : tri) v[k] += share;
  }
  return v;
}

std::vector<double> lumped_boundary_measure(const AxiMesh& mesh, BoundaryTag tag) {
  std::vector<double> m(mesh.num_nodes(), 0.0);
  const auto& nodes = mesh.nodes();
  for (const auto& e : mesh.boundary_edges()) {
    if (e.tag != tag) continue;
    const double r_mid = 0.5 * (nodes[e.nodes[0]].r + nodes[e.nodes[1]].r);
    const double share = 0.5 * kTwoPi * r_mid * mesh.edge_length(e);
    m[e.nodes[0]] += share;
    m[e.nodes[1]] += share;
  }
  return m;
}

CsrMatrix assemble_stiffness(const AxiMesh& mesh, std::span<const double> coeff) {
  check_size(mesh, coeff, "assemble_stiffness");
  check_positive(coeff, "assemble_stiffness");
  const auto& nodes = mesh.nodes();
  std::vector<Triplet> trip;
  trip.reserve(mesh.num_triangles() * 9);
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles()[t];
    const double area = mesh.triangle_area(t);
    // grad(lambda_i) = (z_j - z_k, r_k - r_j) / (2 area), (i, j, k) cyclic.
    std::array<double, 3> gr{}, gz{};
    for (int i = 0; i < 3; ++i) {
      const auto& pj = nodes[tri[(i + 1) % 3]];
      const auto& pk = nodes[tri[(i + 2) % 3]];
      gr[i] = (pj.z - pk.z) / (2.0 * area);
      gz[i] = (pk.r - pj.r) / (2.0 * area);
    }
    const double r_bar = (nodes[tri[0]].r + nodes[tri[1]].r + nodes[tri[2]].r) / 3.0;
    const double c_bar = (coeff[tri[0]] + coeff[tri[1]] + coeff[tri[2]]) / 3.0;
    const double w = c_bar * kTwoPi * r_bar * area;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) trip.push_back({tri[i], tri[j], w * (gr[i] * gr[j] + gz[i] * gz[j])});
  }
  return CsrMatrix::from_triplets(static_cast<int>(mesh.num_nodes()), trip);
}

std::vector<double> lumped_mass_diagonal(const AxiMesh& mesh, std::span<const double> coeff) {
  check_size(mesh, coeff, "assemble_mass_lumped");
  check_positive(coeff, "assemble_mass_lumped");
  auto d = lumped_volumes(mesh);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] *= coeff[i];
  return d;
}

CsrMatrix assemble_mass_lumped(const AxiMesh& mesh, std::span<const double> coeff) {
  return CsrMatrix::diagonal(lumped_mass_diagonal(mesh, coeff));
}

BoundaryOperator::BoundaryOperator(const AxiMesh& mesh, const std::map<BoundaryTag, double>& tag_weights)
    : weights_(tag_weights), diagonal_(mesh.num_nodes(), 0.0) {
  for (const auto& [tag, w] : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w))
      throw std::invalid_argument("boundary weight for '" + std::string(to_string(tag)) + "' must be >= 0");
    auto m = lumped_boundary_measure(mesh, tag);
    for (std::size_t i = 0; i < m.size(); ++i) diagonal_[i] += w * m[i];
    measures_.emplace(tag, std::move(m));
  }
  matrix_ = CsrMatrix::diagonal(diagonal_);
}

std::vector<double> BoundaryOperator::load(BoundaryTag tag, double external) const {
  const auto w = weights_.find(tag);
  if (w == weights_.end())
    throw std::invalid_argument("no boundary weight registered for tag '" + std::string(to_string(tag)) + "'");
  const auto& m = measures_.at(tag);
  std::vector<double> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = w->second * external * m[i];
  return out;
}

BoundaryOperator assemble_boundary(const AxiMesh& mesh, const std::map<BoundaryTag, double>& tag_weights) {
  return BoundaryOperator(mesh, tag_weights);
}

PointProbe::PointProbe(const AxiMesh& mesh, Point p) : p_(p) {
  const auto loc = mesh.locate(p);
  if (loc.triangle < 0) throw OutsideDomain(p);
  nodes_ = mesh.triangles()[loc.triangle];
  weights_ = loc.bary;
}

double PointProbe::operator()(std::span<const double> field) const {
  // Snap exact hits on a node so nodal values come back unchanged.
  for (int k = 0; k < 3; ++k)
    if (weights_[k] == 1.0) return field[nodes_[k]];
  return weights_[0] * field[nodes_[0]] + weights_[1] * field[nodes_[1]] + weights_[2] * field[nodes_[2]];
}

double interpolate_at(const AxiMesh& mesh, std::span<const double> field, Point p) {
  check_size(mesh, field, "interpolate_at");
  return PointProbe(mesh, p)(field);
}

double integrate(std::span<const double> volumes, std::span<const double> field,
                 std::optional<std::span<const char>> mask) {
  if (field.size() != volumes.size()) throw std::invalid_argument("integrate: field size does not match node count");
  double sum = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (mask && !(*mask)[i]) continue;
    sum += field[i] * volumes[i];
  }
  return sum;
}

double integrate(const AxiMesh& mesh, std::span<const double> field, std::optional<std::span<const char>> mask) {
  return integrate(lumped_volumes(mesh), field, mask);
}

}  // namespace litt
