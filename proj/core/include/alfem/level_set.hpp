#pragma once

#include <string>

#include "alfem/geometry.hpp"

namespace alfem {

/// Closed-form signed-distance-like function, negative inside subdomain 1.
class LevelSet {
 public:
  enum class Kind { circle, half_circle, vertical_line };

  /// |x - c| - r; subdomain 1 is the disk.
  static LevelSet circle(const Point& center, double radius);
  /// Circle of radius r centered at the origin, restricted to the unit square;
  /// subdomain 1 is the part containing the origin.
  static LevelSet half_circle(double radius);
  /// x - x0; subdomain 1 is {x < x0}.
  static LevelSet vertical_line(double x0);

  double operator()(const Point& p) const;

  Kind kind() const { return kind_; }
  const Point& center() const { return center_; }
  double radius() const { return radius_; }
  double abscissa() const { return x0_; }
  std::string describe() const;

 private:
  Kind kind_ = Kind::vertical_line;
  Point center_ = Point::Zero();
  double radius_ = 0.0;
  double x0_ = 0.0;
};

}  // namespace alfem
