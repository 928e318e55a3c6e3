#include "alfem/fe.hpp"

#include <cmath>

#include "alfem/error.hpp"

namespace alfem {

P1Element::P1Element(const std::array<Point, 3>& vertices) : vertices_(vertices) {
  const double det = cross(vertices[1] - vertices[0], vertices[2] - vertices[0]);
  if (det == 0.0 || !std::isfinite(det)) throw DegenerateElement("zero-area triangle");
  area_ = 0.5 * std::abs(det);
  for (int i = 0; i < 3; ++i) {
    const Point& pj = vertices[(i + 1) % 3];
    const Point& pk = vertices[(i + 2) % 3];
    grads_[i] = Point(pj.y() - pk.y(), pk.x() - pj.x()) / det;
  }
}

Eigen::Vector3d P1Element::values(const Point& p) const {
  const Point d = p - vertices_[0];
  Eigen::Vector3d v;
  v(1) = grads_[1].dot(d);
  v(2) = grads_[2].dot(d);
  v(0) = 1.0 - v(1) - v(2);
  return v;
}

Eigen::Matrix3d local_stiffness(const std::array<Point, 3>& vertices, double eps) {
  const P1Element el(vertices);
  Eigen::Matrix3d k;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) k(i, j) = eps * el.area() * el.gradient(i).dot(el.gradient(j));
  return k;
}

}  // namespace alfem
