#include "alfem/layout.hpp"

#include <algorithm>

#include "alfem/error.hpp"

namespace alfem {

std::array<int, 3> TwoFieldLayout::element_dofs(int field, int t) const {
  const auto& tri = mesh_->triangles()[t];
  const auto& map = dof_of_vertex_[field - 1];
  return {map[tri[0]], map[tri[1]], map[tri[2]]};
}

double TwoFieldLayout::evaluate(const Eigen::VectorXd& u, int field, int t, const Point& p) const {
  const P1Element el(mesh_->triangle_points(t));
  const auto dofs = element_dofs(field, t);
  const Eigen::Vector3d phi = el.values(p);
  double v = 0.0;
  for (int i = 0; i < 3; ++i) v += phi[i] * u[dofs[i]];
  return v;
}

Point TwoFieldLayout::gradient(const Eigen::VectorXd& u, int field, int t) const {
  const P1Element el(mesh_->triangle_points(t));
  const auto dofs = element_dofs(field, t);
  Point g = Point::Zero();
  for (int i = 0; i < 3; ++i) g += u[dofs[i]] * el.gradient(i);
  return g;
}

void TwoFieldLayout::number_dofs() {
  const std::size_t nv = mesh_->num_vertices();
  dof_vertex_.clear();
  for (int field = 0; field < 2; ++field) {
    dof_of_vertex_[field].assign(nv, -1);
    if (field == 1) field2_offset_ = static_cast<int>(dof_vertex_.size());
    if (!enabled_[field]) continue;
    std::vector<char> used(nv, 0);
    for (std::size_t t = 0; t < mesh_->num_triangles(); ++t)
      if (active_[field][t])
        for (int v : mesh_->triangles()[t]) used[v] = 1;
    for (std::size_t v = 0; v < nv; ++v)
      if (used[v]) {
        dof_of_vertex_[field][v] = static_cast<int>(dof_vertex_.size());
        dof_vertex_.push_back(static_cast<int>(v));
      }
  }
  num_dofs_ = static_cast<int>(dof_vertex_.size());
}

namespace {

BoundaryPiece whole_facet(const Mesh& mesh, int f, int t, int field) {
  const auto& fv = mesh.facets()[f].vertices;
  BoundaryPiece b;
  b.facet = f;
  b.element = t;
  b.field = field;
  b.p0 = mesh.vertices()[fv[0]];
  b.p1 = mesh.vertices()[fv[1]];
  b.normal = mesh.facet_normal(f, t);
  b.length = mesh.facet_lengths()[f];
  b.h = b.length;
  b.tag = mesh.boundary_tags()[f];
  return b;
}

}  // namespace

TwoFieldLayout make_fitted_layout(const Mesh& mesh, const InterfaceTopology& topology) {
  TwoFieldLayout l;
  l.mesh_ = &mesh;
  const std::size_t nt = mesh.num_triangles();
  for (int field = 0; field < 2; ++field) l.active_[field].assign(nt, 0);
  for (std::size_t t = 0; t < nt; ++t) {
    const int tag = mesh.subdomain_tags()[t];
    if (tag != 1 && tag != 2) throw InvalidArgument("fitted layout needs subdomain tags 1 and 2");
    l.active_[tag - 1][t] = 1;
  }
  l.number_dofs();

  for (std::size_t t = 0; t < nt; ++t) {
    const auto pts = mesh.triangle_points(static_cast<int>(t));
    l.bulk_.push_back({static_cast<int>(t), mesh.subdomain_tags()[t], Polygon(pts.begin(), pts.end())});
  }
  for (std::size_t k = 0; k < topology.facets.size(); ++k) {
    const int f = topology.facets[k];
    const auto& fv = mesh.facets()[f].vertices;
    InterfaceSegment s;
    s.p0 = mesh.vertices()[fv[0]];
    s.p1 = mesh.vertices()[fv[1]];
    s.normal = topology.normals[k];
    s.length = topology.trace_h[k];
    s.h = topology.trace_h[k];
    s.elements = topology.sides[k];
    s.ends = {fv[0], fv[1]};
    l.interface_.push_back(s);
  }
  for (std::size_t f = 0; f < mesh.num_facets(); ++f) {
    const Facet& facet = mesh.facets()[f];
    if (!facet.is_boundary()) continue;
    const int t = facet.triangles[0];
    l.boundary_.push_back(whole_facet(mesh, static_cast<int>(f), t, mesh.subdomain_tags()[t]));
  }
  return l;
}

TwoFieldLayout make_cut_layout(const Mesh& mesh, const CutClassification& cls,
                               std::array<bool, 2> fields) {
  if (cls.status.size() != mesh.num_triangles())
    throw InvalidArgument("classification does not belong to this mesh");
  TwoFieldLayout l;
  l.mesh_ = &mesh;
  l.enabled_ = fields;
  const std::size_t nt = mesh.num_triangles();
  for (int field = 0; field < 2; ++field) {
    l.active_[field].assign(nt, 0);
    if (!fields[field]) continue;
    for (std::size_t t = 0; t < nt; ++t) l.active_[field][t] = cls.active(static_cast<int>(t), field + 1);
  }
  l.number_dofs();

  for (std::size_t t = 0; t < nt; ++t) {
    const int ti = static_cast<int>(t);
    for (int field = 1; field <= 2; ++field) {
      if (!l.active(field, ti)) continue;
      if (cls.is_cut(ti)) {
        const auto& c = cls.cut_data[cls.cut_index[ti]];
        l.bulk_.push_back({ti, field, field == 1 ? c.part1 : c.part2});
      } else {
        const auto pts = mesh.triangle_points(ti);
        l.bulk_.push_back({ti, field, Polygon(pts.begin(), pts.end())});
      }
    }
  }

  for (const auto& ff : cls.interface_facets) {
    const auto& fv = mesh.facets()[ff.facet].vertices;
    InterfaceSegment s;
    s.p0 = mesh.vertices()[fv[0]];
    s.p1 = mesh.vertices()[fv[1]];
    s.normal = ff.normal;
    s.length = mesh.facet_lengths()[ff.facet];
    s.h = s.length;
    s.elements = ff.sides;
    s.ends = {fv[0], fv[1]};
    l.interface_.push_back(s);
  }
  for (const auto& c : cls.cut_data) {
    InterfaceSegment s;
    s.p0 = c.segment[0];
    s.p1 = c.segment[1];
    s.normal = c.normal;
    s.length = (s.p1 - s.p0).norm();
    s.h = mesh.diameter(c.triangle);
    s.elements = {c.triangle, c.triangle};
    const double a = mesh.triangle_area(c.triangle);
    s.fractions = {area(c.part1) / a, area(c.part2) / a};
    s.ends = c.ends;
    s.cut = true;
    l.interface_.push_back(s);
  }

  for (std::size_t f = 0; f < mesh.num_facets(); ++f) {
    const Facet& facet = mesh.facets()[f];
    if (!facet.is_boundary()) continue;
    const int fi = static_cast<int>(f);
    const int t = facet.triangles[0];
    for (int field = 1; field <= 2; ++field) {
      if (!l.active(field, t)) continue;
      BoundaryPiece b = whole_facet(mesh, fi, t, field);
      if (cls.is_cut(t)) {
        const double va = cls.vertex_values[facet.vertices[0]];
        const double vb = cls.vertex_values[facet.vertices[1]];
        const auto inside = [field](double v) { return field == 1 ? v <= 0.0 : v >= 0.0; };
        if (!inside(va) && !inside(vb)) continue;
        if (inside(va) != inside(vb)) {
          const Point x = b.p0 + zero_crossing(va, vb) * (b.p1 - b.p0);
          (inside(va) ? b.p1 : b.p0) = x;
          b.length = (b.p1 - b.p0).norm();
          if (b.length == 0.0) continue;
        }
      }
      l.boundary_.push_back(b);
    }
  }

  for (int field = 1; field <= 2; ++field)
    for (int f : cls.ghost_faces) {
      const auto& tr = mesh.facets()[f].triangles;
      if (l.active(field, tr[0]) && l.active(field, tr[1])) l.ghost_[field - 1].push_back(f);
    }
  return l;
}

}  // namespace alfem
