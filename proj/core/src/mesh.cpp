#include "alfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "alfem/error.hpp"

namespace alfem {

namespace {

constexpr double kAxisTol = 1e-12;

BoundaryTag tag_from_normal(const Point& n) {
  if (std::abs(n.y()) < kAxisTol) return n.x() > 0 ? BoundaryTag::right : BoundaryTag::left;
  if (std::abs(n.x()) < kAxisTol) return n.y() > 0 ? BoundaryTag::top : BoundaryTag::bottom;
  return BoundaryTag::none;
}

std::pair<int, int> edge_key(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

}  // namespace

std::string_view to_string(BoundaryTag tag) {
  switch (tag) {
    case BoundaryTag::none: return "none";
    case BoundaryTag::left: return "left";
    case BoundaryTag::right: return "right";
    case BoundaryTag::bottom: return "bottom";
    case BoundaryTag::top: return "top";
  }
  return "none";
}

Mesh Mesh::from_triangles(std::vector<Point> vertices, std::vector<Triangle> triangles,
                          std::vector<int> subdomains) {
  Mesh m;
  m.vertices_ = std::move(vertices);
  m.triangles_ = std::move(triangles);
  if (subdomains.empty()) subdomains.assign(m.triangles_.size(), 1);
  if (subdomains.size() != m.triangles_.size())
    throw InvalidArgument("subdomain tag count does not match triangle count");
  m.subdomains_ = std::move(subdomains);

  const int nv = static_cast<int>(m.vertices_.size());
  for (auto& tri : m.triangles_) {
    for (int v : tri)
      if (v < 0 || v >= nv) throw InvalidArgument("triangle references a missing vertex");
    const Point p[3] = {m.vertices_[tri[0]], m.vertices_[tri[1]], m.vertices_[tri[2]]};
    const double twice = cross(p[1] - p[0], p[2] - p[0]);
    if (twice == 0.0) throw DegenerateElement("zero-area triangle in mesh");
    if (twice < 0.0) std::swap(tri[1], tri[2]);
  }

  std::map<std::pair<int, int>, int> lookup;
  m.triangle_facets_.resize(m.triangles_.size());
  for (int t = 0; t < static_cast<int>(m.triangles_.size()); ++t) {
    const auto& tri = m.triangles_[t];
    for (int k = 0; k < 3; ++k) {
      const int a = tri[k];
      const int b = tri[(k + 1) % 3];
      const auto key = edge_key(a, b);
      auto it = lookup.find(key);
      if (it == lookup.end()) {
        const int f = static_cast<int>(m.facets_.size());
        lookup.emplace(key, f);
        m.facets_.push_back(Facet{{a, b}, {t, -1}});
        m.triangle_facets_[t][k] = f;
      } else {
        Facet& facet = m.facets_[it->second];
        if (facet.triangles[1] >= 0) throw InvalidArgument("non-manifold edge in mesh");
        facet.triangles[1] = t;
        m.triangle_facets_[t][k] = it->second;
      }
    }
  }

  m.boundary_tags_.assign(m.facets_.size(), BoundaryTag::none);
  m.facet_lengths_.resize(m.facets_.size());
  for (std::size_t f = 0; f < m.facets_.size(); ++f) {
    const auto& facet = m.facets_[f];
    m.facet_lengths_[f] = (m.vertices_[facet.vertices[1]] - m.vertices_[facet.vertices[0]]).norm();
    m.h_max_ = std::max(m.h_max_, m.facet_lengths_[f]);
    if (facet.is_boundary())
      m.boundary_tags_[f] = tag_from_normal(m.facet_normal(static_cast<int>(f), facet.triangles[0]));
  }
  return m;
}

double Mesh::diameter(int t) const {
  const auto& fs = triangle_facets_[t];
  return std::max({facet_lengths_[fs[0]], facet_lengths_[fs[1]], facet_lengths_[fs[2]]});
}

double Mesh::triangle_area(int t) const {
  const auto p = triangle_points(t);
  return 0.5 * cross(p[1] - p[0], p[2] - p[0]);
}

std::array<Point, 3> Mesh::triangle_points(int t) const {
  const auto& tri = triangles_[t];
  return {vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]};
}

Point Mesh::facet_normal(int f, int side_triangle) const {
  const auto& facet = facets_[f];
  const Point& a = vertices_[facet.vertices[0]];
  const Point& b = vertices_[facet.vertices[1]];
  Point n(b.y() - a.y(), a.x() - b.x());
  n.normalize();
  const auto& tri = triangles_[side_triangle];
  int opposite = tri[0];
  for (int v : tri)
    if (v != facet.vertices[0] && v != facet.vertices[1]) opposite = v;
  if (n.dot(vertices_[opposite] - a) > 0.0) n = -n;
  return n;
}

Point Mesh::facet_midpoint(int f) const {
  const auto& facet = facets_[f];
  return 0.5 * (vertices_[facet.vertices[0]] + vertices_[facet.vertices[1]]);
}

Mesh Mesh::with_subdomains(std::vector<int> tags) const {
  if (tags.size() != triangles_.size())
    throw InvalidArgument("subdomain tag count does not match triangle count");
  Mesh copy = *this;
  copy.subdomains_ = std::move(tags);
  return copy;
}

Mesh build_structured_mesh(int n, DiagonalSplit) {
  if (n < 1) throw InvalidArgument("structured mesh needs n >= 1, got " + std::to_string(n));
  std::vector<Point> vertices;
  vertices.reserve(static_cast<std::size_t>(n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      vertices.emplace_back(static_cast<double>(i) / n, static_cast<double>(j) / n);
  std::vector<Mesh::Triangle> triangles;
  triangles.reserve(2 * static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int v00 = i + j * (n + 1);
      const int v10 = v00 + 1;
      const int v01 = v00 + n + 1;
      const int v11 = v01 + 1;
      triangles.push_back({v00, v10, v11});
      triangles.push_back({v00, v11, v01});
    }
  }
  return Mesh::from_triangles(std::move(vertices), std::move(triangles));
}

Mesh refine_uniform(const Mesh& mesh) {
  std::vector<Point> vertices = mesh.vertices();
  std::vector<int> midpoint(mesh.num_facets());
  for (std::size_t f = 0; f < mesh.num_facets(); ++f) {
    midpoint[f] = static_cast<int>(vertices.size());
    vertices.push_back(mesh.facet_midpoint(static_cast<int>(f)));
  }
  std::vector<Mesh::Triangle> triangles;
  std::vector<int> tags;
  triangles.reserve(4 * mesh.num_triangles());
  tags.reserve(4 * mesh.num_triangles());
  for (int t = 0; t < static_cast<int>(mesh.num_triangles()); ++t) {
    const auto& tri = mesh.triangles()[t];
    const auto& fs = mesh.triangle_facets(t);
    const int m01 = midpoint[fs[0]];
    const int m12 = midpoint[fs[1]];
    const int m20 = midpoint[fs[2]];
    triangles.push_back({tri[0], m01, m20});
    triangles.push_back({m01, tri[1], m12});
    triangles.push_back({m20, m12, tri[2]});
    triangles.push_back({m01, m12, m20});
    for (int k = 0; k < 4; ++k) tags.push_back(mesh.subdomain_tags()[t]);
  }
  Mesh fine = Mesh::from_triangles(std::move(vertices), std::move(triangles), std::move(tags));

  // Children of a boundary facet carry the parent's tag, whatever their geometry says.
  std::map<std::pair<int, int>, int> lookup;
  for (std::size_t f = 0; f < fine.num_facets(); ++f) {
    const auto& v = fine.facets()[f].vertices;
    lookup.emplace(edge_key(v[0], v[1]), static_cast<int>(f));
  }
  for (std::size_t f = 0; f < mesh.num_facets(); ++f) {
    if (!mesh.facets()[f].is_boundary()) continue;
    const auto& v = mesh.facets()[f].vertices;
    for (int end : v) fine.boundary_tags_[lookup.at(edge_key(end, midpoint[f]))] = mesh.boundary_tags()[f];
  }
  return fine;
}

InterfaceTopology interface_from_tags(const Mesh& mesh) {
  const auto& tags = mesh.subdomain_tags();
  std::vector<int> found;
  for (std::size_t f = 0; f < mesh.num_facets(); ++f) {
    const auto& facet = mesh.facets()[f];
    if (facet.is_boundary()) continue;
    const int t0 = tags[facet.triangles[0]];
    const int t1 = tags[facet.triangles[1]];
    if (t0 != t1) {
      if (!((t0 == 1 && t1 == 2) || (t0 == 2 && t1 == 1)))
        throw InvalidArgument("interface facets must separate subdomains 1 and 2");
      found.push_back(static_cast<int>(f));
    }
  }
  InterfaceTopology topo;
  if (found.empty()) return topo;

  // Chain the facets into a polyline, starting from an endpoint of degree one
  // (lowest vertex index) or, for a closed loop, from the first facet.
  std::map<int, std::vector<int>> incident;
  for (int f : found)
    for (int v : mesh.facets()[f].vertices) incident[v].push_back(f);
  int start_vertex = -1;
  for (const auto& [v, fs] : incident) {
    if (fs.size() > 2) throw GeometryMismatch("interface polyline branches");
    if (fs.size() == 1 && start_vertex < 0) start_vertex = v;
  }
  if (start_vertex < 0) start_vertex = mesh.facets()[found.front()].vertices[0];
  std::vector<bool> used(mesh.num_facets(), false);
  int current = start_vertex;
  while (true) {
    int next_facet = -1;
    for (int f : incident[current])
      if (!used[f]) next_facet = f;
    if (next_facet < 0) break;
    used[next_facet] = true;
    topo.facets.push_back(next_facet);
    const auto& v = mesh.facets()[next_facet].vertices;
    current = v[0] == current ? v[1] : v[0];
  }
  if (topo.facets.size() != found.size())
    throw GeometryMismatch("interface facets do not form a connected polyline");

  for (int f : topo.facets) {
    const auto& facet = mesh.facets()[f];
    const int a = facet.triangles[0];
    const int b = facet.triangles[1];
    const std::array<int, 2> sides = tags[a] == 1 ? std::array{a, b} : std::array{b, a};
    topo.sides.push_back(sides);
    topo.normals.push_back(mesh.facet_normal(f, sides[0]));
    topo.trace_h.push_back(mesh.facet_lengths()[f]);
  }
  return topo;
}

FittedInterface fit_interface_line(const Mesh& mesh, double x0) {
  constexpr double tol = 1e-12;
  double ymin = mesh.vertices().front().y();
  double ymax = ymin;
  double xmin = mesh.vertices().front().x();
  double xmax = xmin;
  for (const auto& p : mesh.vertices()) {
    ymin = std::min(ymin, p.y());
    ymax = std::max(ymax, p.y());
    xmin = std::min(xmin, p.x());
    xmax = std::max(xmax, p.x());
  }
  if (!(x0 > xmin + tol && x0 < xmax - tol))
    throw GeometryMismatch("interface line x0 = " + std::to_string(x0) + " is not interior");
  double covered = 0.0;
  for (std::size_t f = 0; f < mesh.num_facets(); ++f) {
    const auto& v = mesh.facets()[f].vertices;
    if (std::abs(mesh.vertices()[v[0]].x() - x0) <= tol &&
        std::abs(mesh.vertices()[v[1]].x() - x0) <= tol)
      covered += mesh.facet_lengths()[f];
  }
  if (std::abs(covered - (ymax - ymin)) > 1e-9)
    throw GeometryMismatch("x0 = " + std::to_string(x0) + " does not lie on a mesh line");

  std::vector<int> tags(mesh.num_triangles());
  for (int t = 0; t < static_cast<int>(mesh.num_triangles()); ++t) {
    const auto p = mesh.triangle_points(t);
    tags[t] = (p[0].x() + p[1].x() + p[2].x()) / 3.0 < x0 ? 1 : 2;
  }
  FittedInterface out{mesh.with_subdomains(std::move(tags)), {}};
  out.topology = interface_from_tags(out.mesh);
  return out;
}

}  // namespace alfem
