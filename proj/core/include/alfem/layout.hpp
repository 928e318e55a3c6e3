#pragma once

#include <array>
#include <vector>

#include "alfem/cut.hpp"
#include "alfem/fe.hpp"
#include "alfem/mesh.hpp"

namespace alfem {

/// Part of an element carrying one field: the whole triangle or a clipped polygon.
struct BulkPiece {
  int element = -1;
  int field = 1;  ///< 1 or 2
  Polygon polygon;
};

/// Straight piece of Γ. On a fitted facet the two sides are different triangles;
/// on a cut triangle both sides are the same triangle.
struct InterfaceSegment {
  Point p0 = Point::Zero();
  Point p1 = Point::Zero();
  Point normal = Point::Zero();  ///< from Ω1 into Ω2
  double length = 0.0;
  double h = 0.0;  ///< penalty length: facet length (fitted) or element diameter (cut)
  std::array<int, 2> elements{-1, -1};
  std::array<double, 2> fractions{0.5, 0.5};  ///< |K ∩ Ω_i| / |K| on cut elements
  std::array<SegmentEndKey, 2> ends{};
  bool cut = false;
};

/// Part of an outer boundary facet seen by one field.
struct BoundaryPiece {
  int facet = -1;
  int element = -1;
  int field = 1;
  Point p0 = Point::Zero();
  Point p1 = Point::Zero();
  Point normal = Point::Zero();  ///< outward
  double length = 0.0;
  double h = 0.0;  ///< facet length
  BoundaryTag tag = BoundaryTag::none;
};

/// Degrees of freedom and integration pieces of a problem with up to two
/// subdomain fields. Field-1 unknowns come first, then field-2 unknowns, each
/// in ascending vertex order. The mesh must outlive the layout.
class TwoFieldLayout {
 public:
  const Mesh& mesh() const { return *mesh_; }
  int num_dofs() const { return num_dofs_; }
  /// Unknown of `field` at `vertex`, or -1 if the field is not active there.
  int dof(int field, int vertex) const { return dof_of_vertex_[field - 1][vertex]; }
  std::array<int, 3> element_dofs(int field, int t) const;
  bool active(int field, int t) const { return active_[field - 1][t] != 0; }
  bool has_field(int field) const { return enabled_[field - 1]; }
  int dof_vertex(int dof) const { return dof_vertex_[dof]; }
  int dof_field(int dof) const { return dof < field2_offset_ ? 1 : 2; }

  const std::vector<BulkPiece>& bulk() const { return bulk_; }
  const std::vector<InterfaceSegment>& interface() const { return interface_; }
  const std::vector<BoundaryPiece>& boundary() const { return boundary_; }
  /// Interior faces touching a cut element whose two neighbours both carry `field`.
  const std::vector<int>& ghost_faces(int field) const { return ghost_[field - 1]; }

  /// Values of the discrete field on element t at point p (p may lie outside t).
  double evaluate(const Eigen::VectorXd& u, int field, int t, const Point& p) const;
  Point gradient(const Eigen::VectorXd& u, int field, int t) const;

 private:
  friend TwoFieldLayout make_fitted_layout(const Mesh&, const InterfaceTopology&);
  friend TwoFieldLayout make_cut_layout(const Mesh&, const CutClassification&,
                                        std::array<bool, 2>);
  void number_dofs();

  const Mesh* mesh_ = nullptr;
  std::array<bool, 2> enabled_{true, true};
  std::array<std::vector<char>, 2> active_;
  std::array<std::vector<int>, 2> dof_of_vertex_;
  std::vector<int> dof_vertex_;
  int num_dofs_ = 0;
  int field2_offset_ = 0;
  std::vector<BulkPiece> bulk_;
  std::vector<InterfaceSegment> interface_;
  std::vector<BoundaryPiece> boundary_;
  std::array<std::vector<int>, 2> ghost_;
};

/// Layout of a fitted interface; `mesh` must carry subdomain tags 1 and 2.
TwoFieldLayout make_fitted_layout(const Mesh& mesh, const InterfaceTopology& topology);

/// Layout on a cut classification. Disabled fields get no unknowns.
TwoFieldLayout make_cut_layout(const Mesh& mesh, const CutClassification& cls,
                               std::array<bool, 2> fields = {true, true});

}  // namespace alfem
