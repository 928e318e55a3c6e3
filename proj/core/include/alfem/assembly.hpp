#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "alfem/fe.hpp"
#include "alfem/mesh.hpp"
#include "alfem/sparse_system.hpp"

namespace alfem {

using ScalarFunction = std::function<double(const Point&)>;
using GradientFunction = std::function<Point(const Point&)>;
/// Boundary data depending on position and outward unit normal.
using FluxFunction = std::function<double(const Point&, const Point&)>;

/// Volume source. Integration never straddles a declared discontinuity line,
/// so piecewise-smooth data with straight jumps are integrated to rule accuracy.
struct Source {
  ScalarFunction value;
  std::vector<AffineFunction> discontinuities;

  Source() = default;
  Source(ScalarFunction f) : value(std::move(f)) {}  // NOLINT(google-explicit-constructor)
  Source(ScalarFunction f, std::vector<AffineFunction> jumps)
      : value(std::move(f)), discontinuities(std::move(jumps)) {}

  static Source constant(double c);
  bool is_zero() const { return !value; }
};

/// Splits a convex polygon along each line in turn; empty pieces are dropped.
std::vector<Polygon> split_polygon(std::span<const Point> poly,
                                   std::span<const AffineFunction> lines);

/// Adds ∫_poly f φ_i to rhs[dofs[i]] for the element basis of `el` (poly ⊂ el).
void add_polygon_load(const P1Element& el, std::span<const Point> poly, const Source& f,
                      const std::array<int, 3>& dofs, Vector& rhs);

/// Global stiffness with a single diffusivity. Throws InvalidArgument if eps <= 0.
SparseSystem assemble_stiffness(const Mesh& mesh, double eps);

/// Global stiffness with eps[tag - 1] on subdomain tag 1 and 2.
SparseSystem assemble_stiffness(const Mesh& mesh, const std::array<double, 2>& eps);

Vector assemble_load(const Mesh& mesh, const Source& f);

/// Boundary facets carrying one of `tags`.
std::vector<int> boundary_facets(const Mesh& mesh, std::span<const BoundaryTag> tags);

/// Vertices of the boundary facets carrying one of `tags`, ascending.
std::vector<int> boundary_vertices(const Mesh& mesh, std::span<const BoundaryTag> tags);

inline constexpr std::array<BoundaryTag, 4> kAllSides{BoundaryTag::left, BoundaryTag::right,
                                                      BoundaryTag::bottom, BoundaryTag::top};

}  // namespace alfem
