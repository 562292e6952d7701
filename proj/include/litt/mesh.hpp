#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "litt/config.hpp"

namespace litt {

enum class BoundaryTag : std::uint8_t { rad, cool, amb, axis };
inline constexpr std::array<BoundaryTag, 4> kAllTags = {BoundaryTag::rad, BoundaryTag::cool, BoundaryTag::amb,
                                                         BoundaryTag::axis};

std::string_view to_string(BoundaryTag tag);
/// Accepts "rad", "cool", "amb", "axis"; throws std::invalid_argument otherwise.
BoundaryTag parse_tag(std::string_view name);

struct Point {
  double r = 0.0;
  double z = 0.0;
};

struct BoundaryEdge {
  std::array<int, 2> nodes;
  BoundaryTag tag;
};

class MeshError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Triangulated half-section in (r, z) of a rotationally symmetric body.
/// Immutable once built; the constructor checks orientation, positivity
/// of r and that every boundary edge carries exactly one tag.
class AxiMesh {
 public:
  AxiMesh(std::vector<Point> nodes, std::vector<std::array<int, 3>> triangles,
          std::vector<BoundaryEdge> boundary_edges);

  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_triangles() const { return triangles_.size(); }
  const std::vector<Point>& nodes() const { return nodes_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  const std::vector<BoundaryEdge>& boundary_edges() const { return boundary_edges_; }

  double triangle_area(std::size_t t) const { return areas_[t]; }
  double edge_length(const BoundaryEdge& e) const;
  /// Surface area swept by the edges carrying `tag` (2 pi r ds).
  double boundary_measure(BoundaryTag tag) const;
  /// Volume of the solid of revolution.
  double volume() const;
  double max_edge_length() const;

  /// Triangle containing `p` with its barycentric coordinates, or -1.
  struct Location {
    int triangle = -1;
    std::array<double, 3> bary{};
  };
  Location locate(Point p, double tol = 1e-9) const;

 private:
  std::vector<Point> nodes_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<BoundaryEdge> boundary_edges_;
  std::vector<double> areas_;
};

/// Monotone coordinates covering [a, b]. Spacing starts at h_a next to a and
/// at h_b next to b, grows geometrically by `growth` and never exceeds h_max.
std::vector<double> graded_coordinates(double a, double b, double h_a, double h_b, double h_max,
                                       double growth = 1.2);

/// Tensor-product triangulation over the given grid lines. Cells for which
/// `keep(r_mid, z_mid)` is false are dropped; boundary edges are tagged with
/// `classify(midpoint)`.
AxiMesh build_tensor_mesh(const std::vector<double>& r_lines, const std::vector<double>& z_lines,
                          const std::function<bool(double, double)>& keep,
                          const std::function<BoundaryTag(Point)>& classify);

/// Slotted cylinder around the applicator. The applicator tip sits at z = 0
/// and the applicator occupies r < applicator_radius, z > 0.
AxiMesh build_mesh(const Geometry& geometry, double mesh_h);

void write_mesh(std::ostream& out, const AxiMesh& mesh);

}  // namespace litt
