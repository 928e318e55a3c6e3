#include "alfem/cut.hpp"

#include <cmath>
#include <string>

#include "alfem/error.hpp"

namespace alfem {

bool CutClassification::active(int t, int side) const {
  const ElementStatus s = status[t];
  if (s == ElementStatus::cut) return true;
  return side == 1 ? s == ElementStatus::inside1 : s == ElementStatus::inside2;
}

double CutClassification::part_area(const Mesh& mesh, int t, int side) const {
  if (cut_index[t] >= 0) {
    const auto& c = cut_data[cut_index[t]];
    return area(side == 1 ? c.part1 : c.part2);
  }
  return active(t, side) ? mesh.triangle_area(t) : 0.0;
}

namespace {

Point linear_gradient(const std::array<Point, 3>& p, const std::array<double, 3>& v) {
  const Point e1 = p[1] - p[0];
  const Point e2 = p[2] - p[0];
  const double det = cross(e1, e2);
  const double d1 = v[1] - v[0];
  const double d2 = v[2] - v[0];
  return Point((d1 * e2.y() - d2 * e1.y()) / det, (e1.x() * d2 - e2.x() * d1) / det);
}

}  // namespace

CutClassification classify_cut(const Mesh& mesh, const LevelSet& phi) {
  CutClassification c;
  const double snap = kSnapRelativeTolerance * mesh.h_max();
  c.vertex_values.reserve(mesh.num_vertices());
  for (const auto& p : mesh.vertices()) {
    const double v = phi(p);
    c.vertex_values.push_back(std::abs(v) < snap ? 0.0 : v);
  }

  const int nt = static_cast<int>(mesh.num_triangles());
  c.status.resize(nt);
  c.cut_index.assign(nt, -1);
  for (int t = 0; t < nt; ++t) {
    const auto& tri = mesh.triangles()[t];
    bool neg = false;
    bool pos = false;
    for (int v : tri) {
      neg |= c.vertex_values[v] < 0.0;
      pos |= c.vertex_values[v] > 0.0;
    }
    if (!neg && !pos)
      throw DegenerateCut("level set vanishes on all vertices of triangle " + std::to_string(t));
    if (neg && pos) {
      c.status[t] = ElementStatus::cut;
    } else {
      c.status[t] = neg ? ElementStatus::inside1 : ElementStatus::inside2;
      continue;
    }

    CutElement ce;
    ce.triangle = t;
    const auto pts = mesh.triangle_points(t);
    const std::array<double, 3> vals{c.vertex_values[tri[0]], c.vertex_values[tri[1]],
                                     c.vertex_values[tri[2]]};
    ce.part1 = clip_polygon(pts, vals, true);
    ce.part2 = clip_polygon(pts, vals, false);
    int found = 0;
    const auto& fs = mesh.triangle_facets(t);
    for (int k = 0; k < 3 && found < 2; ++k) {
      const int kb = (k + 1) % 3;
      if (vals[k] == 0.0) {
        ce.segment[found] = pts[k];
        ce.ends[found] = tri[k];
        ++found;
      } else if (vals[k] * vals[kb] < 0.0) {
        const double s = zero_crossing(vals[k], vals[kb]);
        ce.segment[found] = pts[k] + s * (pts[kb] - pts[k]);
        ce.ends[found] = -(static_cast<SegmentEndKey>(fs[k]) + 1);
        ++found;
      }
    }
    ce.normal = linear_gradient(pts, vals).normalized();
    c.cut_index[t] = static_cast<int>(c.cut_data.size());
    c.cut_elements.push_back(t);
    c.cut_data.push_back(std::move(ce));
  }

  for (std::size_t f = 0; f < mesh.num_facets(); ++f) {
    const auto& facet = mesh.facets()[f];
    if (facet.is_boundary()) continue;
    const int a = facet.triangles[0];
    const int b = facet.triangles[1];
    if (c.is_cut(a) || c.is_cut(b)) c.ghost_faces.push_back(static_cast<int>(f));
    if (c.vertex_values[facet.vertices[0]] == 0.0 && c.vertex_values[facet.vertices[1]] == 0.0 &&
        c.status[a] != c.status[b]) {
      FittedInterfaceFacet fi;
      fi.facet = static_cast<int>(f);
      fi.sides = c.status[a] == ElementStatus::inside1 ? std::array{a, b} : std::array{b, a};
      fi.normal = mesh.facet_normal(fi.facet, fi.sides[0]);
      c.interface_facets.push_back(fi);
    }
  }
  return c;
}

}  // namespace alfem
