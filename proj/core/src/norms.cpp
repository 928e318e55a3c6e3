#include "alfem/norms.hpp"

#include <cmath>

#include "alfem/quadrature.hpp"

namespace alfem {

namespace {

struct Accum {
  double l2 = 0.0;
  double h1 = 0.0;
  double energy = 0.0;

  ErrorNorms finish() const { return {std::sqrt(l2), std::sqrt(h1), std::sqrt(energy)}; }
};

void accumulate(Accum& acc, const P1Element& el, const Eigen::Vector3d& coeff,
                std::span<const Point> poly, const ExactSolution& exact, double eps) {
  Point grad_h = Point::Zero();
  for (int i = 0; i < 3; ++i) grad_h += coeff[i] * el.gradient(i);
  const QuadratureRule q = polygon_quadrature(poly, TriangleRule::degree5);
  for (std::size_t k = 0; k < q.size(); ++k) {
    const double e = exact.u(q.points[k]) - el.values(q.points[k]).dot(coeff);
    const double g = (exact.grad(q.points[k]) - grad_h).squaredNorm();
    acc.l2 += q.weights[k] * e * e;
    acc.h1 += q.weights[k] * g;
    acc.energy += q.weights[k] * eps * g;
  }
}

}  // namespace

ErrorNorms p1_errors(const Mesh& mesh, const Vector& u, const ExactSolution& exact, double eps) {
  Accum acc;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto pts = mesh.triangle_points(static_cast<int>(t));
    const P1Element el(pts);
    const auto& tri = mesh.triangles()[t];
    const Eigen::Vector3d c(u[tri[0]], u[tri[1]], u[tri[2]]);
    accumulate(acc, el, c, pts, exact, eps);
  }
  return acc.finish();
}

ErrorNorms layout_errors(const TwoFieldLayout& layout, const Vector& u,
                         const std::array<ExactSolution, 2>& exact,
                         const std::array<double, 2>& eps) {
  Accum acc;
  for (const auto& piece : layout.bulk()) {
    const P1Element el(layout.mesh().triangle_points(piece.element));
    const auto dofs = layout.element_dofs(piece.field, piece.element);
    const Eigen::Vector3d c(u[dofs[0]], u[dofs[1]], u[dofs[2]]);
    accumulate(acc, el, c, piece.polygon, exact[piece.field - 1], eps[piece.field - 1]);
  }
  return acc.finish();
}

double observed_order(double coarse, double fine) { return std::log2(coarse / fine); }

}  // namespace alfem
