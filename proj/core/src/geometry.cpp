#include "alfem/geometry.hpp"

namespace alfem {

double signed_area(std::span<const Point> poly) {
  const std::size_t n = poly.size();
  if (n < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) twice += cross(poly[i], poly[(i + 1) % n]);
  return 0.5 * twice;
}

Point centroid(std::span<const Point> poly) {
  const std::size_t n = poly.size();
  const double a = signed_area(poly);
  if (n < 3 || a == 0.0) {
    Point c = Point::Zero();
    for (const auto& p : poly) c += p;
    return n ? Point(c / static_cast<double>(n)) : c;
  }
  Point c = Point::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % n];
    c += (p + q) * cross(p, q);
  }
  return c / (6.0 * a);
}

Polygon clip_polygon(std::span<const Point> poly, std::span<const double> values,
                     bool keep_negative) {
  Polygon out;
  const std::size_t n = poly.size();
  out.reserve(n + 2);
  auto inside = [keep_negative](double v) { return keep_negative ? v <= 0.0 : v >= 0.0; };
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const double vi = values[i];
    const double vj = values[j];
    if (inside(vi)) out.push_back(poly[i]);
    // Strict sign change only: zeros are already on the boundary and kept above.
    if ((vi < 0.0 && vj > 0.0) || (vi > 0.0 && vj < 0.0)) {
      const double t = zero_crossing(vi, vj);
      out.push_back(poly[i] + t * (poly[j] - poly[i]));
    }
  }
  if (out.size() < 3) out.clear();
  return out;
}

Polygon clip_polygon(std::span<const Point> poly, const AffineFunction& f, bool keep_negative) {
  std::vector<double> values;
  values.reserve(poly.size());
  for (const auto& p : poly) values.push_back(f(p));
  return clip_polygon(poly, values, keep_negative);
}

}  // namespace alfem
