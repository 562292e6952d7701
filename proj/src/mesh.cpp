#include "litt/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>

namespace litt {

std::string_view to_string(BoundaryTag tag) {
  switch (tag) {
    case BoundaryTag::rad: return "rad";
    case BoundaryTag::cool: return "cool";
    case BoundaryTag::amb: return "amb";
    case BoundaryTag::axis: return "axis";
  }
  return "?";
}

BoundaryTag parse_tag(std::string_view name) {
  for (auto t : kAllTags)
    if (to_string(t) == name) return t;
  throw std::invalid_argument("unknown boundary tag '" + std::string(name) + "'");
}

namespace {

constexpr double kMinArea = 1e-16;

double signed_area(const Point& a, const Point& b, const Point& c) {
  return 0.5 * ((b.r - a.r) * (c.z - a.z) - (c.r - a.r) * (b.z - a.z));
}

std::pair<int, int> edge_key(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

}  // namespace

AxiMesh::AxiMesh(std::vector<Point> nodes, std::vector<std::array<int, 3>> triangles,
                 std::vector<BoundaryEdge> boundary_edges)
    : nodes_(std::move(nodes)), triangles_(std::move(triangles)), boundary_edges_(std::move(boundary_edges)) {
  const int n = static_cast<int>(nodes_.size());
  for (const auto& p : nodes_)
    if (!(p.r >= 0.0) || !std::isfinite(p.z)) throw MeshError("node with r < 0 or non-finite coordinate");

  areas_.reserve(triangles_.size());
  std::map<std::pair<int, int>, int> edge_use;
  for (const auto& t : triangles_) {
    for (int v : t)
      if (v < 0 || v >= n) throw MeshError("triangle references missing node");
    const double a = signed_area(nodes_[t[0]], nodes_[t[1]], nodes_[t[2]]);
    if (a <= kMinArea) throw MeshError("triangle is inverted or degenerate");
    areas_.push_back(a);
    for (int k = 0; k < 3; ++k) ++edge_use[edge_key(t[k], t[(k + 1) % 3])];
  }

  std::map<std::pair<int, int>, int> tagged;
  for (const auto& e : boundary_edges_) {
    if (++tagged[edge_key(e.nodes[0], e.nodes[1])] > 1) throw MeshError("boundary edge tagged twice");
    if (e.tag == BoundaryTag::axis && (nodes_[e.nodes[0]].r != 0.0 || nodes_[e.nodes[1]].r != 0.0))
      throw MeshError("axis edge off r = 0");
  }
  for (const auto& [key, uses] : edge_use) {
    if (uses == 1 && !tagged.count(key)) throw MeshError("untagged boundary edge");
  }
  for (const auto& [key, count] : tagged) {
    const auto it = edge_use.find(key);
    if (it == edge_use.end() || it->second != 1) throw MeshError("tagged edge is not on the boundary");
  }
}

double AxiMesh::edge_length(const BoundaryEdge& e) const {
  const auto& a = nodes_[e.nodes[0]];
  const auto& b = nodes_[e.nodes[1]];
  return std::hypot(b.r - a.r, b.z - a.z);
}

double AxiMesh::boundary_measure(BoundaryTag tag) const {
  double sum = 0.0;
  for (const auto& e : boundary_edges_) {
    if (e.tag != tag) continue;
    const double r_mid = 0.5 * (nodes_[e.nodes[0]].r + nodes_[e.nodes[1]].r);
    sum += 2.0 * std::numbers::pi * r_mid * edge_length(e);
  }
  return sum;
}

double AxiMesh::volume() const {
  double sum = 0.0;
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    const auto& tri = triangles_[t];
    const double r_bar = (nodes_[tri[0]].r + nodes_[tri[1]].r + nodes_[tri[2]].r) / 3.0;
    sum += 2.0 * std::numbers::pi * r_bar * areas_[t];
  }
  return sum;
}

double AxiMesh::max_edge_length() const {
  double h = 0.0;
  for (const auto& t : triangles_)
    for (int k = 0; k < 3; ++k) {
      const auto& a = nodes_[t[k]];
      const auto& b = nodes_[t[(k + 1) % 3]];
      h = std::max(h, std::hypot(b.r - a.r, b.z - a.z));
    }
  return h;
}

AxiMesh::Location AxiMesh::locate(Point p, double tol) const {
  // Prefer the triangle with the least negative barycentric coordinate so
  // points on shared edges resolve deterministically.
  Location best;
  double best_min = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    const auto& tri = triangles_[t];
    const auto& a = nodes_[tri[0]];
    const auto& b = nodes_[tri[1]];
    const auto& c = nodes_[tri[2]];
    const double area = areas_[t];
    const std::array<double, 3> bary = {signed_area(p, b, c) / area, signed_area(a, p, c) / area,
                                        signed_area(a, b, p) / area};
    const double scale = std::sqrt(area);
    const double worst = std::min({bary[0], bary[1], bary[2]}) * scale;
    if (worst > best_min) {
      best_min = worst;
      best.triangle = static_cast<int>(t);
      best.bary = bary;
    }
  }
  if (best_min < -tol) return {};
  return best;
}

std::vector<double> graded_coordinates(double a, double b, double h_a, double h_b, double h_max, double growth) {
  const double length = b - a;
  if (!(length > 0.0) || !(h_max > 0.0)) throw MeshError("graded_coordinates: empty interval or bad spacing");
  h_a = std::min(h_a, h_max);
  h_b = std::min(h_b, h_max);

  std::vector<double> left, right;
  double sl = h_a, sr = h_b, total = 0.0;
  while (total < length * (1.0 - 1e-12)) {
    if (sl <= sr) {
      left.push_back(sl);
      total += sl;
      sl = std::min(sl * growth, h_max);
    } else {
      right.push_back(sr);
      total += sr;
      sr = std::min(sr * growth, h_max);
    }
  }
  std::vector<double> steps = left;
  steps.insert(steps.end(), right.rbegin(), right.rend());
  const double scale = length / total;

  std::vector<double> coords{a};
  double x = a;
  for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
    x += steps[i] * scale;
    coords.push_back(x);
  }
  coords.push_back(b);
  return coords;
}

AxiMesh build_tensor_mesh(const std::vector<double>& r_lines, const std::vector<double>& z_lines,
                          const std::function<bool(double, double)>& keep,
                          const std::function<BoundaryTag(Point)>& classify) {
  const int nr = static_cast<int>(r_lines.size());
  const int nz = static_cast<int>(z_lines.size());
  if (nr < 2 || nz < 2) throw MeshError("tensor mesh needs at least two lines per direction");

  std::vector<int> id(static_cast<std::size_t>(nr) * nz, -1);
  auto idx = [&](int i, int j) -> int& { return id[static_cast<std::size_t>(j) * nr + i]; };
  std::vector<Point> nodes;
  std::vector<std::array<int, 3>> tris;
  auto node = [&](int i, int j) {
    int& v = idx(i, j);
    if (v < 0) {
      v = static_cast<int>(nodes.size());
      nodes.push_back({r_lines[i], z_lines[j]});
    }
    return v;
  };

  // Number nodes row by row so the ordering is independent of cell removal.
  std::vector<char> cell_on(static_cast<std::size_t>(nr - 1) * (nz - 1), 0);
  for (int j = 0; j + 1 < nz; ++j)
    for (int i = 0; i + 1 < nr; ++i)
      cell_on[static_cast<std::size_t>(j) * (nr - 1) + i] =
          keep(0.5 * (r_lines[i] + r_lines[i + 1]), 0.5 * (z_lines[j] + z_lines[j + 1]));
  for (int j = 0; j < nz; ++j)
    for (int i = 0; i < nr; ++i) {
      bool used = false;
      for (int dj = -1; dj <= 0 && !used; ++dj)
        for (int di = -1; di <= 0 && !used; ++di) {
          const int ci = i + di, cj = j + dj;
          if (ci >= 0 && cj >= 0 && ci < nr - 1 && cj < nz - 1)
            used = cell_on[static_cast<std::size_t>(cj) * (nr - 1) + ci];
        }
      if (used) node(i, j);
    }

  std::map<std::pair<int, int>, int> edge_use;
  for (int j = 0; j + 1 < nz; ++j)
    for (int i = 0; i + 1 < nr; ++i) {
      if (!cell_on[static_cast<std::size_t>(j) * (nr - 1) + i]) continue;
      const int a = idx(i, j), b = idx(i + 1, j), c = idx(i + 1, j + 1), d = idx(i, j + 1);
      tris.push_back({a, b, c});
      tris.push_back({a, c, d});
      for (auto [u, v] : {std::pair{a, b}, std::pair{b, c}, std::pair{c, a}, std::pair{a, c}, std::pair{c, d}, std::pair{d, a}})
        ++edge_use[edge_key(u, v)];
    }

  std::vector<BoundaryEdge> edges;
  for (const auto& [key, uses] : edge_use) {
    if (uses != 1) continue;
    const Point mid{0.5 * (nodes[key.first].r + nodes[key.second].r),
                    0.5 * (nodes[key.first].z + nodes[key.second].z)};
    edges.push_back({{key.first, key.second}, classify(mid)});
  }
  return AxiMesh(std::move(nodes), std::move(tris), std::move(edges));
}

AxiMesh build_mesh(const Geometry& g, double mesh_h) {
  g.validate();
  if (!(mesh_h > 0.0)) throw ValidationError("geometry.mesh_h", "must be > 0");

  const double a = g.applicator_radius;
  const double z_bottom = -(g.domain_height - g.applicator_depth);
  const double z_top = g.applicator_depth;
  const double h_near = mesh_h / g.near_refine;

  auto r_lines = graded_coordinates(0.0, a, h_near, h_near, h_near);
  const auto r_out = graded_coordinates(a, g.domain_radius, h_near, mesh_h, mesh_h);
  r_lines.insert(r_lines.end(), r_out.begin() + 1, r_out.end());

  auto z_lines = graded_coordinates(z_bottom, 0.0, mesh_h, h_near, mesh_h);
  for (const auto& seg : {graded_coordinates(0.0, g.diffuser_length, h_near, h_near, mesh_h),
                          graded_coordinates(g.diffuser_length, z_top, h_near, mesh_h, mesh_h)})
    z_lines.insert(z_lines.end(), seg.begin() + 1, seg.end());

  const double eps = 1e-9 * g.domain_height;
  auto keep = [&](double r, double z) { return !(r < a && z > 0.0); };
  auto classify = [&](Point m) {
    if (m.r < eps) return BoundaryTag::axis;
    if (std::abs(m.r - a) < eps && m.z > 0.0) return m.z < g.diffuser_length ? BoundaryTag::rad : BoundaryTag::cool;
    if (std::abs(m.z) < eps && m.r < a) return BoundaryTag::cool;
    return BoundaryTag::amb;
  };
  return build_tensor_mesh(r_lines, z_lines, keep, classify);
}

void write_mesh(std::ostream& out, const AxiMesh& mesh) {
  out.precision(17);
  out << "# nodes " << mesh.num_nodes() << "\n# idx r z\n";
  for (std::size_t i = 0; i < mesh.num_nodes(); ++i)
    out << i << ' ' << mesh.nodes()[i].r << ' ' << mesh.nodes()[i].z << '\n';
  out << "# triangles " << mesh.num_triangles() << "\n# idx a b c\n";
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles()[t];
    out << t << ' ' << tri[0] << ' ' << tri[1] << ' ' << tri[2] << '\n';
  }
  out << "# boundary_edges " << mesh.boundary_edges().size() << "\n# a b tag\n";
  for (const auto& e : mesh.boundary_edges())
    out << e.nodes[0] << ' ' << e.nodes[1] << ' ' << to_string(e.tag) << '\n';
}

}  // namespace litt
