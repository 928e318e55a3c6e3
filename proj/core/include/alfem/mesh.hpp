#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "alfem/geometry.hpp"

namespace alfem {

enum class BoundaryTag : std::uint8_t { none, left, right, bottom, top };

std::string_view to_string(BoundaryTag tag);

/// Diagonal direction of the structured split. Only the lower-left to
/// upper-right split is produced by the generators.
enum class DiagonalSplit : std::uint8_t { lower_left_to_upper_right };

struct Facet {
  std::array<int, 2> vertices{};
  /// Adjacent triangles; `triangles[1] == -1` on the boundary.
  std::array<int, 2> triangles{-1, -1};

  bool is_boundary() const { return triangles[1] < 0; }
};

/// Conforming triangulation with facet topology. Immutable once built; use
/// `with_subdomains` to obtain a retagged copy.
class Mesh {
 public:
  using Triangle = std::array<int, 3>;

  /// Builds facets and boundary tags from raw connectivity. Triangles are
  /// reoriented counterclockwise; zero-area triangles are rejected.
  /// Boundary facets are tagged by the axis-aligned direction of their outward
  /// normal when it is one, `none` otherwise.
  static Mesh from_triangles(std::vector<Point> vertices, std::vector<Triangle> triangles,
                             std::vector<int> subdomains = {});

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const std::vector<BoundaryTag>& boundary_tags() const { return boundary_tags_; }
  const std::vector<int>& subdomain_tags() const { return subdomains_; }
  const std::vector<double>& facet_lengths() const { return facet_lengths_; }
  /// Local facet k of triangle t joins local vertices k and (k+1)%3.
  const std::array<int, 3>& triangle_facets(int t) const { return triangle_facets_[t]; }

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_triangles() const { return triangles_.size(); }
  std::size_t num_facets() const { return facets_.size(); }

  double h_max() const { return h_max_; }
  /// Element diameter (longest edge).
  double diameter(int t) const;
  double triangle_area(int t) const;
  std::array<Point, 3> triangle_points(int t) const;

  /// Unit normal of a facet pointing out of triangle `side` (one of its neighbours).
  Point facet_normal(int f, int side_triangle) const;
  Point facet_midpoint(int f) const;

  Mesh with_subdomains(std::vector<int> tags) const;

 private:
  friend Mesh refine_uniform(const Mesh& mesh);

  std::vector<Point> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<Facet> facets_;
  std::vector<BoundaryTag> boundary_tags_;
  std::vector<int> subdomains_;
  std::vector<double> facet_lengths_;
  std::vector<std::array<int, 3>> triangle_facets_;
  double h_max_ = 0.0;
};

/// Unit square split into n x n cells, two triangles per cell. Vertex (i, j)
/// has index i + j (n + 1).
Mesh build_structured_mesh(int n, DiagonalSplit split = DiagonalSplit::lower_left_to_upper_right);

/// Red refinement: each triangle becomes four congruent children; boundary and
/// subdomain tags are inherited.
Mesh refine_uniform(const Mesh& mesh);

/// Fitted interface polyline between subdomain 1 and subdomain 2.
struct InterfaceTopology {
  /// Interface facets ordered along the polyline.
  std::vector<int> facets;
  /// Unit normal per facet, pointing from subdomain 1 into subdomain 2.
  std::vector<Point> normals;
  std::vector<double> trace_h;
  /// Per facet: {triangle in subdomain 1, triangle in subdomain 2}.
  std::vector<std::array<int, 2>> sides;
};

struct FittedInterface {
  Mesh mesh;  ///< copy of the input with subdomain tags 1 (x < x0) and 2
  InterfaceTopology topology;
};

/// Interface on the vertical mesh line x = x0. Throws GeometryMismatch when
/// x0 is not a full interior mesh line.
FittedInterface fit_interface_line(const Mesh& mesh, double x0);

/// Builds the topology of an interface already encoded in the subdomain tags.
InterfaceTopology interface_from_tags(const Mesh& mesh);

}  // namespace alfem
