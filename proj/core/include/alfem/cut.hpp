#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "alfem/geometry.hpp"
#include "alfem/level_set.hpp"
#include "alfem/mesh.hpp"

namespace alfem {

enum class ElementStatus : std::uint8_t { inside1, inside2, cut };

/// Identifies where an interface segment ends: at a mesh vertex (value >= 0)
/// or on the interior of a mesh facet f (value -(f + 1)). Two segments sharing
/// a key are neighbours on the interface polyline.
using SegmentEndKey = long;

struct CutElement {
  int triangle = -1;
  Polygon part1;  ///< K ∩ Ω1, counterclockwise
  Polygon part2;  ///< K ∩ Ω2, counterclockwise
  std::array<Point, 2> segment;
  std::array<SegmentEndKey, 2> ends{};
  /// Unit normal of the linearized interface, pointing from Ω1 into Ω2.
  Point normal = Point::Zero();
};

/// Mesh facet lying on the zero level set between an inside1 and an inside2 element.
struct FittedInterfaceFacet {
  int facet = -1;
  std::array<int, 2> sides{};  ///< {triangle in Ω1, triangle in Ω2}
  Point normal = Point::Zero();
};

struct CutClassification {
  /// Level-set values at the vertices after snapping near-zero values to zero.
  std::vector<double> vertex_values;
  std::vector<ElementStatus> status;
  /// Triangles crossed by the interface (strict sign change of the vertex values).
  std::vector<int> cut_elements;
  /// Interior facets adjacent to at least one cut triangle, ascending.
  std::vector<int> ghost_faces;
  /// Geometry of each cut triangle, parallel to `cut_elements`.
  std::vector<CutElement> cut_data;
  /// triangle -> index into cut_data, or -1.
  std::vector<int> cut_index;
  std::vector<FittedInterfaceFacet> interface_facets;

  bool is_cut(int t) const { return cut_index[t] >= 0; }
  /// True when triangle t carries degrees of freedom of subdomain field `side` (1 or 2).
  bool active(int t, int side) const;
  /// Measure of K ∩ Ω_side.
  double part_area(const Mesh& mesh, int t, int side) const;
};

/// Snap tolerance: vertices with |φ| below this multiple of h_max are placed on Γ.
inline constexpr double kSnapRelativeTolerance = 1e-12;

/// Classifies every triangle against the piecewise-linear interpolant of `phi`.
/// Throws DegenerateCut if φ vanishes at all three vertices of a triangle.
CutClassification classify_cut(const Mesh& mesh, const LevelSet& phi);

}  // namespace alfem
