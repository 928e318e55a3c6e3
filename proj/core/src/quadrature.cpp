#include "alfem/quadrature.hpp"

#include <array>
#include <cmath>

#include "alfem/error.hpp"

namespace alfem {

double QuadratureRule::measure() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

void QuadratureRule::append(const QuadratureRule& other) {
  points.insert(points.end(), other.points.begin(), other.points.end());
  weights.insert(weights.end(), other.weights.begin(), other.weights.end());
}

namespace {

struct Barycentric {
  double l0, l1, l2, w;
};

const std::vector<Barycentric>& reference_rule(TriangleRule rule) {
  static const std::vector<Barycentric> midpoints{
      {0.5, 0.5, 0.0, 1.0 / 3.0}, {0.0, 0.5, 0.5, 1.0 / 3.0}, {0.5, 0.0, 0.5, 1.0 / 3.0}};
  static const std::vector<Barycentric> interior{{2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 3.0},
                                                 {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0, 1.0 / 3.0},
                                                 {1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0, 1.0 / 3.0}};
  static const std::vector<Barycentric> dunavant5 = [] {
    const double s15 = std::sqrt(15.0);
    const double a1 = (6.0 - s15) / 21.0;
    const double b1 = (9.0 + 2.0 * s15) / 21.0;
    const double w1 = (155.0 - s15) / 1200.0;
    const double a2 = (6.0 + s15) / 21.0;
    const double b2 = (9.0 - 2.0 * s15) / 21.0;
    const double w2 = (155.0 + s15) / 1200.0;
    return std::vector<Barycentric>{{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 9.0 / 40.0},
                                    {b1, a1, a1, w1}, {a1, b1, a1, w1}, {a1, a1, b1, w1},
                                    {b2, a2, a2, w2}, {a2, b2, a2, w2}, {a2, a2, b2, w2}};
  }();
  switch (rule) {
    case TriangleRule::edge_midpoints: return midpoints;
    case TriangleRule::interior: return interior;
    case TriangleRule::degree5: return dunavant5;
  }
  return midpoints;
}

}  // namespace

QuadratureRule triangle_quadrature(const Point& a, const Point& b, const Point& c,
                                   TriangleRule rule) {
  const double measure = 0.5 * std::abs(cross(b - a, c - a));
  QuadratureRule q;
  const auto& ref = reference_rule(rule);
  q.points.reserve(ref.size());
  q.weights.reserve(ref.size());
  for (const auto& r : ref) {
    q.points.push_back(r.l0 * a + r.l1 * b + r.l2 * c);
    q.weights.push_back(r.w * measure);
  }
  return q;
}

QuadratureRule polygon_quadrature(std::span<const Point> poly, TriangleRule rule) {
  QuadratureRule q;
  for (std::size_t i = 1; i + 1 < poly.size(); ++i)
    q.append(triangle_quadrature(poly[0], poly[i], poly[i + 1], rule));
  return q;
}

QuadratureRule segment_quadrature(const Point& a, const Point& b, int n) {
  static const std::array<std::vector<std::pair<double, double>>, 5> gauss = [] {
    const double s35 = std::sqrt(30.0);
    const double x4a = std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
    const double x4b = std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
    const double w4a = (18.0 + s35) / 36.0;
    const double w4b = (18.0 - s35) / 36.0;
    const double s70 = std::sqrt(70.0);
    const double x5a = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
    const double x5b = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
    const double w5a = (322.0 + 13.0 * s70) / 900.0;
    const double w5b = (322.0 - 13.0 * s70) / 900.0;
    return std::array<std::vector<std::pair<double, double>>, 5>{
        std::vector<std::pair<double, double>>{{0.0, 2.0}},
        {{-1.0 / std::sqrt(3.0), 1.0}, {1.0 / std::sqrt(3.0), 1.0}},
        {{-std::sqrt(0.6), 5.0 / 9.0}, {0.0, 8.0 / 9.0}, {std::sqrt(0.6), 5.0 / 9.0}},
        {{-x4b, w4b}, {-x4a, w4a}, {x4a, w4a}, {x4b, w4b}},
        {{-x5b, w5b}, {-x5a, w5a}, {0.0, 128.0 / 225.0}, {x5a, w5a}, {x5b, w5b}}};
  }();
  if (n < 1 || n > 5) throw InvalidArgument("segment quadrature supports 1..5 points");
  const double half = 0.5 * (b - a).norm();
  QuadratureRule q;
  for (const auto& [x, w] : gauss[n - 1]) {
    q.points.push_back(a + 0.5 * (1.0 + x) * (b - a));
    q.weights.push_back(w * half);
  }
  return q;
}

}  // namespace alfem
