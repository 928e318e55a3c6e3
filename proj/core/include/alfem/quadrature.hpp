#pragma once

#include <span>
#include <vector>

#include "alfem/geometry.hpp"

namespace alfem {

/// Physical-coordinate quadrature rule; weights sum to the measure of the domain.
struct QuadratureRule {
  std::vector<Point> points;
  std::vector<double> weights;

  std::size_t size() const { return points.size(); }
  double measure() const;
  void append(const QuadratureRule& other);
};

enum class TriangleRule {
  edge_midpoints,  ///< 3 points on the edge midpoints, degree 2
  interior,        ///< 3 interior points (Strang-Fix), degree 2
  degree5,         ///< 7-point Dunavant, degree 5
};

QuadratureRule triangle_quadrature(const Point& a, const Point& b, const Point& c,
                                   TriangleRule rule = TriangleRule::edge_midpoints);

/// Fan triangulation of a convex polygon, `rule` applied per sub-triangle.
QuadratureRule polygon_quadrature(std::span<const Point> poly,
                                  TriangleRule rule = TriangleRule::interior);

/// n-point Gauss-Legendre rule on the segment a-b, 1 <= n <= 5.
QuadratureRule segment_quadrature(const Point& a, const Point& b, int n = 2);

}  // namespace alfem
