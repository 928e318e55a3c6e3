#include "alfem/assembly.hpp"

#include <algorithm>

#include "alfem/error.hpp"
#include "alfem/quadrature.hpp"

namespace alfem {

Source Source::constant(double c) {
  return Source([c](const Point&) { return c; });
}

std::vector<Polygon> split_polygon(std::span<const Point> poly,
                                   std::span<const AffineFunction> lines) {
  std::vector<Polygon> pieces{Polygon(poly.begin(), poly.end())};
  for (const auto& line : lines) {
    std::vector<Polygon> next;
    for (const auto& p : pieces) {
      bool neg = false;
      bool pos = false;
      for (const auto& x : p) {
        const double v = line(x);
        neg |= v < 0.0;
        pos |= v > 0.0;
      }
      if (!(neg && pos)) {
        next.push_back(p);
        continue;
      }
      for (bool keep_negative : {true, false}) {
        Polygon q = clip_polygon(p, line, keep_negative);
        if (q.size() >= 3 && area(q) > 0.0) next.push_back(std::move(q));
      }
    }
    pieces = std::move(next);
  }
  return pieces;
}

void add_polygon_load(const P1Element& el, std::span<const Point> poly, const Source& f,
                      const std::array<int, 3>& dofs, Vector& rhs) {
  if (f.is_zero() || poly.size() < 3) return;
  for (const auto& piece : split_polygon(poly, f.discontinuities)) {
    const QuadratureRule q = polygon_quadrature(piece, TriangleRule::interior);
    for (std::size_t k = 0; k < q.size(); ++k) {
      const double fw = f.value(q.points[k]) * q.weights[k];
      const Eigen::Vector3d phi = el.values(q.points[k]);
      for (int i = 0; i < 3; ++i)
        if (dofs[i] >= 0) rhs[dofs[i]] += fw * phi[i];
    }
  }
}

namespace {

SparseSystem stiffness_impl(const Mesh& mesh, const std::function<double(int)>& eps_of) {
  TripletAccumulator acc;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const double eps = eps_of(static_cast<int>(t));
    if (!(eps > 0.0)) throw InvalidArgument("diffusivity must be positive");
    const Eigen::Matrix3d k = local_stiffness(mesh.triangle_points(static_cast<int>(t)), eps);
    const auto& tri = mesh.triangles()[t];
    acc.add_symmetric(tri, k);
  }
  SparseSystem s;
  const int n = static_cast<int>(mesh.num_vertices());
  s.matrix = acc.build(n);
  s.rhs = Vector::Zero(n);
  return s;
}

}  // namespace

SparseSystem assemble_stiffness(const Mesh& mesh, double eps) {
  return stiffness_impl(mesh, [eps](int) { return eps; });
}

SparseSystem assemble_stiffness(const Mesh& mesh, const std::array<double, 2>& eps) {
  return stiffness_impl(mesh, [&](int t) {
    const int tag = mesh.subdomain_tags()[t];
    if (tag != 1 && tag != 2) throw InvalidArgument("subdomain tags must be 1 or 2");
    return eps[tag - 1];
  });
}

Vector assemble_load(const Mesh& mesh, const Source& f) {
  Vector b = Vector::Zero(static_cast<int>(mesh.num_vertices()));
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto pts = mesh.triangle_points(static_cast<int>(t));
    const P1Element el(pts);
    add_polygon_load(el, pts, f, mesh.triangles()[t], b);
  }
  return b;
}

std::vector<int> boundary_facets(const Mesh& mesh, std::span<const BoundaryTag> tags) {
  std::vector<int> out;
  for (std::size_t f = 0; f < mesh.num_facets(); ++f) {
    if (!mesh.facets()[f].is_boundary()) continue;
    if (std::find(tags.begin(), tags.end(), mesh.boundary_tags()[f]) != tags.end())
      out.push_back(static_cast<int>(f));
  }
  return out;
}

std::vector<int> boundary_vertices(const Mesh& mesh, std::span<const BoundaryTag> tags) {
  std::vector<int> out;
  for (int f : boundary_facets(mesh, tags))
    for (int v : mesh.facets()[f].vertices) out.push_back(v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace alfem
