#pragma once

#include <Eigen/Core>
#include <array>

#include "alfem/geometry.hpp"

namespace alfem {

/// Affine P1 basis on one triangle. Gradients are constant on the element.
class P1Element {
 public:
  /// Throws DegenerateElement for a zero-area triangle.
  explicit P1Element(const std::array<Point, 3>& vertices);

  double area() const { return area_; }
  const std::array<Point, 3>& gradients() const { return grads_; }
  const Point& gradient(int i) const { return grads_[i]; }
  /// Barycentric coordinates of p (basis function values; may leave [0,1] outside K).
  Eigen::Vector3d values(const Point& p) const;
  const std::array<Point, 3>& vertices() const { return vertices_; }

 private:
  std::array<Point, 3> vertices_;
  std::array<Point, 3> grads_;
  double area_ = 0.0;
};

/// eps |K| ∇φ_i·∇φ_j.
Eigen::Matrix3d local_stiffness(const std::array<Point, 3>& vertices, double eps);

}  // namespace alfem
