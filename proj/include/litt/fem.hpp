#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "litt/mesh.hpp"
#include "litt/sparse.hpp"

namespace litt {

/// Nodal values of one quantity on a mesh (P1 coefficients).
using ScalarField = std::vector<double>;

class OutsideDomain : public std::out_of_range {
 public:
  explicit OutsideDomain(Point p);
  Point point() const { return p_; }

 private:
  Point p_;
};

// All integrals carry the 2 pi r weight of the axisymmetric measure and use
// one-point centroid quadrature per element.

/// Lumped volume per node: one third of each adjacent element's volume of
/// revolution. Sums to mesh.volume().
std::vector<double> lumped_volumes(const AxiMesh& mesh);

/// Lumped surface measure per node for edges carrying `tag`.
std::vector<double> lumped_boundary_measure(const AxiMesh& mesh, BoundaryTag tag);

/// P1 stiffness with integrand coeff grad(u).grad(v) 2 pi r. The element
/// coefficient is the mean of the three nodal values.
CsrMatrix assemble_stiffness(const AxiMesh& mesh, std::span<const double> coeff);

/// Diagonal mass matrix with entries coeff_i * lumped_volume_i.
CsrMatrix assemble_mass_lumped(const AxiMesh& mesh, std::span<const double> coeff);
/// Diagonal of assemble_mass_lumped without building the matrix.
std::vector<double> lumped_mass_diagonal(const AxiMesh& mesh, std::span<const double> coeff);

/// Robin/Marshak boundary terms, lumped onto boundary nodes.
class BoundaryOperator {
 public:
  BoundaryOperator(const AxiMesh& mesh, const std::map<BoundaryTag, double>& tag_weights);

  /// Sum of weight * u * v * 2 pi r over all weighted edges (diagonal).
  const CsrMatrix& matrix() const { return matrix_; }
  const std::vector<double>& diagonal() const { return diagonal_; }

  /// Load vector for `weight(tag) * external * v` integrated over the tag.
  /// Throws std::invalid_argument for a tag without a weight.
  std::vector<double> load(BoundaryTag tag, double external) const;

 private:
  std::map<BoundaryTag, double> weights_;
  std::map<BoundaryTag, std::vector<double>> measures_;
  std::vector<double> diagonal_;
  CsrMatrix matrix_;
};

BoundaryOperator assemble_boundary(const AxiMesh& mesh, const std::map<BoundaryTag, double>& tag_weights);

/// Barycentric interpolation at `p`; throws OutsideDomain.
double interpolate_at(const AxiMesh& mesh, std::span<const double> field, Point p);

/// Cached probe for repeated sampling at a fixed point.
class PointProbe {
 public:
  PointProbe(const AxiMesh& mesh, Point p);
  double operator()(std::span<const double> field) const;
  Point point() const { return p_; }

 private:
  Point p_;
  std::array<int, 3> nodes_{};
  std::array<double, 3> weights_{};
};

/// Lumped quadrature of `field`, restricted to nodes with mask[i] != 0.
double integrate(std::span<const double> volumes, std::span<const double> field,
                 std::optional<std::span<const char>> mask = std::nullopt);
double integrate(const AxiMesh& mesh, std::span<const double> field,
                 std::optional<std::span<const char>> mask = std::nullopt);

}  // namespace litt
