#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

namespace alfem {

using Point = Eigen::Vector2d;
using Polygon = std::vector<Point>;

inline double cross(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

/// Signed area, positive for counterclockwise vertex order.
double signed_area(std::span<const Point> poly);

inline double area(std::span<const Point> poly) {
  const double a = signed_area(poly);
  return a < 0 ? -a : a;
}

Point centroid(std::span<const Point> poly);

/// Line-shaped scalar function value(x) = a·x + b, used to clip polygons and
/// segments by linear interpolants (level sets, straight data discontinuities).
struct AffineFunction {
  Eigen::Vector2d gradient = Eigen::Vector2d::Zero();
  double offset = 0.0;

  double operator()(const Point& p) const { return gradient.dot(p) + offset; }
};

/// Sutherland-Hodgman clip of a convex polygon against {f <= 0} (keep_negative)
/// or {f >= 0}. Values are sampled from `values` (one per polygon vertex) so the
/// clip follows the piecewise-linear interpolant exactly.
Polygon clip_polygon(std::span<const Point> poly, std::span<const double> values,
                     bool keep_negative);

Polygon clip_polygon(std::span<const Point> poly, const AffineFunction& f, bool keep_negative);

/// Zero crossing parameter t in [0,1] along a->b for linear data va, vb of opposite sign.
inline double zero_crossing(double va, double vb) { return va / (va - vb); }

}  // namespace alfem
