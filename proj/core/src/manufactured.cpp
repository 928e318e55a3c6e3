#include "alfem/manufactured.hpp"

#include <cmath>
#include <numbers>

namespace alfem {

using std::numbers::pi;

Source ExactSolution::source(double eps) const {
  return Source([lap = laplacian, eps](const Point& p) { return -eps * lap(p); });
}

FluxFunction ExactSolution::flux(double eps) const {
  return [g = grad, eps](const Point& p, const Point& n) { return eps * g(p).dot(n); };
}

ExactSolution ExactSolution::scaled(double factor) const {
  return {[f = u, factor](const Point& p) { return factor * f(p); },
          [g = grad, factor](const Point& p) -> Point { return factor * g(p); },
          [l = laplacian, factor](const Point& p) { return factor * l(p); }};
}

ExactSolution sine_product() {
  return {[](const Point& p) { return std::sin(pi * p.x()) * std::sin(pi * p.y()); },
          [](const Point& p) -> Point {
            return {pi * std::cos(pi * p.x()) * std::sin(pi * p.y()),
                    pi * std::sin(pi * p.x()) * std::cos(pi * p.y())};
          },
          [](const Point& p) { return -2.0 * pi * pi * std::sin(pi * p.x()) * std::sin(pi * p.y()); }};
}

ExactSolution sine_product_2x() {
  return {[](const Point& p) { return std::sin(2.0 * pi * p.x()) * std::sin(pi * p.y()); },
          [](const Point& p) -> Point {
            return {2.0 * pi * std::cos(2.0 * pi * p.x()) * std::sin(pi * p.y()),
                    pi * std::sin(2.0 * pi * p.x()) * std::cos(pi * p.y())};
          },
          [](const Point& p) {
            return -5.0 * pi * pi * std::sin(2.0 * pi * p.x()) * std::sin(pi * p.y());
          }};
}

ExactSolution linear(double c, double a, double b) {
  return {[=](const Point& p) { return c + a * p.x() + b * p.y(); },
          [=](const Point&) -> Point { return {a, b}; }, [](const Point&) { return 0.0; }};
}

ExactSolution radial_bubble(const Point& center, double r) {
  const double r2 = r * r;
  return {[=](const Point& p) { return 1.0 - (p - center).squaredNorm() / r2; },
          [=](const Point& p) -> Point { return -2.0 * (p - center) / r2; },
          [=](const Point&) { return -4.0 / r2; }};
}

Source step_source() {
  AffineFunction line;
  line.gradient = Eigen::Vector2d(0.0, 1.0);
  line.offset = -0.5;
  return Source([](const Point& p) { return p.y() <= 0.5 ? 1.0 : -3.5; }, {line});
}

}  // namespace alfem
