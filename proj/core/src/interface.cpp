#include "alfem/interface.hpp"

#include <algorithm>
#include <map>

#include "alfem/error.hpp"
#include "segment_kernel.hpp"

namespace alfem {

double harmonic_omega(double eps1, double eps2) { return 2.0 * eps1 * eps2 / (eps1 + eps2); }

ResolvedWeights resolve_weights(const WeightScheme& scheme, double eps1, double eps2,
                                const std::array<double, 2>& fractions, bool cut) {
  if (!(eps1 > 0.0) || !(eps2 > 0.0)) throw InvalidArgument("diffusivities must be positive");
  ResolvedWeights r;
  r.omega = harmonic_omega(eps1, eps2);
  switch (scheme.mode) {
    case WeightMode::arithmetic: break;
    case WeightMode::harmonic:
      r.w1 = eps2 / (eps1 + eps2);
      r.w2 = eps1 / (eps1 + eps2);
      break;
    case WeightMode::geometric:
      if (cut) {
        const double total = fractions[0] + fractions[1];
        r.w1 = fractions[0] / total;
        r.w2 = fractions[1] / total;
      }
      break;
  }
  r.penalty_scale = scheme.penalty_scale.value_or(
      scheme.mode == WeightMode::harmonic ? r.omega : std::max(eps1, eps2));
  return r;
}

JumpAverage jump_and_average(double u1, double u2, const ResolvedWeights& w) {
  return {u1 - u2, w.w1 * u1 + w.w2 * u2, w.w2 * u1 + w.w1 * u2};
}

JumpAverage jump_and_average(const InterfaceTopology& topo, int facet, double u1, double u2,
                             const ResolvedWeights& w) {
  if (std::find(topo.facets.begin(), topo.facets.end(), facet) == topo.facets.end())
    throw InvalidArgument("facet " + std::to_string(facet) + " is not an interface facet");
  return jump_and_average(u1, u2, w);
}

namespace detail {

bool is_dirichlet(const OuterBoundary& outer, BoundaryTag tag) {
  return std::find(outer.dirichlet.begin(), outer.dirichlet.end(), tag) != outer.dirichlet.end();
}

SegmentKernel segment_kernel(const TwoFieldLayout& layout, const InterfaceSegment& s,
                             const InterfaceData& d, const WeightScheme& w) {
  SegmentKernel k;
  k.weights = resolve_weights(w, d.eps1, d.eps2, s.fractions, s.cut);
  k.gamma = d.gamma0 * k.weights.penalty_scale / s.h;
  const Mesh& mesh = layout.mesh();
  const P1Element e1(mesh.triangle_points(s.elements[0]));
  const P1Element e2(mesh.triangle_points(s.elements[1]));
  const auto d1 = layout.element_dofs(1, s.elements[0]);
  const auto d2 = layout.element_dofs(2, s.elements[1]);
  for (int i = 0; i < 3; ++i) {
    k.dofs[i] = d1[i];
    k.dofs[3 + i] = d2[i];
    k.flux[i] = k.weights.w1 * d.eps1 * e1.gradient(i).dot(s.normal);
    k.flux[3 + i] = k.weights.w2 * d.eps2 * e2.gradient(i).dot(s.normal);
  }
  k.rule = segment_quadrature(s.p0, s.p1, 2);
  for (const Point& x : k.rule.points) {
    const Eigen::Vector3d p1 = e1.values(x);
    const Eigen::Vector3d p2 = e2.values(x);
    Vector6 j;
    Vector6 c;
    j << p1, -p2;
    c << k.weights.w2 * p1, k.weights.w1 * p2;
    k.jump.push_back(j);
    k.conjugate.push_back(c);
  }
  return k;
}

void add_bulk(const TwoFieldLayout& layout, const InterfaceData& d, TripletAccumulator& acc,
              Vector& rhs) {
  const auto eps = d.eps();
  for (const auto& piece : layout.bulk()) {
    const P1Element el(layout.mesh().triangle_points(piece.element));
    const auto dofs = layout.element_dofs(piece.field, piece.element);
    const double a = area(piece.polygon);
    const double e = eps[piece.field - 1];
    if (!(e > 0.0)) throw InvalidArgument("diffusivities must be positive");
    Eigen::Matrix3d k;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) k(i, j) = e * a * el.gradient(i).dot(el.gradient(j));
    acc.add_symmetric(dofs, k);
    add_polygon_load(el, piece.polygon, d.f[piece.field - 1], dofs, rhs);
  }
}

void add_outer_boundary(const TwoFieldLayout& layout, const OuterBoundary& outer,
                        const std::array<double, 2>& eps, Vector& rhs, std::vector<int>& dofs,
                        std::vector<double>& values) {
  (void)eps;
  const Mesh& mesh = layout.mesh();
  for (const auto& b : layout.boundary()) {
    const int field = b.field;
    if (is_dirichlet(outer, b.tag)) {
      const auto& value = outer.value[field - 1];
      for (int v : mesh.facets()[b.facet].vertices) {
        const int dof = layout.dof(field, v);
        if (dof < 0) continue;
        dofs.push_back(dof);
        values.push_back(value ? value(mesh.vertices()[v]) : 0.0);
      }
      continue;
    }
    const auto& flux = outer.flux[field - 1];
    if (!flux) continue;
    const P1Element el(mesh.triangle_points(b.element));
    const auto edofs = layout.element_dofs(field, b.element);
    const QuadratureRule q = segment_quadrature(b.p0, b.p1, 2);
    for (std::size_t k = 0; k < q.size(); ++k) {
      const double g = flux(q.points[k], b.normal) * q.weights[k];
      const Eigen::Vector3d phi = el.values(q.points[k]);
      for (int i = 0; i < 3; ++i) rhs[edofs[i]] += g * phi[i];
    }
  }
}

void add_flux_jump_load(const TwoFieldLayout& layout, const InterfaceData& d,
                        const WeightScheme& w, Vector& rhs) {
  if (!d.g) return;
  for (const auto& s : layout.interface()) {
    const SegmentKernel k = segment_kernel(layout, s, d, w);
    for (std::size_t q = 0; q < k.rule.size(); ++q) {
      const double gw = d.g(k.rule.points[q]) * k.rule.weights[q];
      for (int i = 0; i < 6; ++i) rhs[k.dofs[i]] += gw * k.conjugate[q][i];
    }
  }
}

}  // namespace detail

using detail::Matrix6;
using detail::SegmentKernel;
using detail::Vector6;

namespace {

SparseSystem finish(TripletAccumulator& acc, Vector rhs, int n, const TwoFieldLayout& layout,
                    const InterfaceData& d, std::optional<BlockStructure> blocks = std::nullopt) {
  std::vector<int> dofs;
  std::vector<double> values;
  detail::add_outer_boundary(layout, d.outer, d.eps(), rhs, dofs, values);
  SparseSystem s;
  s.matrix = acc.build(n);
  s.rhs = std::move(rhs);
  s.blocks = blocks;
  set_dirichlet(s, std::move(dofs), std::move(values));
  return s;
}

}  // namespace

SparseSystem assemble_nitsche_interface(const TwoFieldLayout& layout, const InterfaceData& d,
                                        const WeightScheme& w) {
  const int n = layout.num_dofs();
  TripletAccumulator acc;
  Vector rhs = Vector::Zero(n);
  detail::add_bulk(layout, d, acc, rhs);
  for (const auto& s : layout.interface()) {
    const SegmentKernel k = detail::segment_kernel(layout, s, d, w);
    Matrix6 m = Matrix6::Zero();
    for (std::size_t q = 0; q < k.rule.size(); ++q) {
      const Vector6& j = k.jump[q];
      m += k.rule.weights[q] *
           (-(k.flux * j.transpose() + j * k.flux.transpose()) + k.gamma * j * j.transpose());
    }
    acc.add_symmetric(k.dofs, m);
  }
  detail::add_flux_jump_load(layout, d, w, rhs);
  return finish(acc, std::move(rhs), n, layout, d);
}

SparseMatrix multiplier_jump_stabilization(const TwoFieldLayout& layout) {
  const auto& segs = layout.interface();
  std::map<SegmentEndKey, std::vector<int>> by_end;
  for (int k = 0; k < static_cast<int>(segs.size()); ++k)
    for (SegmentEndKey e : segs[k].ends) by_end[e].push_back(k);
  TripletAccumulator acc;
  for (const auto& [key, ks] : by_end) {
    if (ks.size() != 2) continue;
    const int a = ks[0];
    const int b = ks[1];
    const double hv = 0.5 * (segs[a].h + segs[b].h);
    const double w = hv * hv;
    acc.add(a, a, w);
    acc.add(b, b, w);
    acc.add(a, b, -w);
    acc.add(b, a, -w);
  }
  const int m = static_cast<int>(segs.size());
  return acc.build(m);
}

namespace detail {

SparseSystem assemble_multiplier(const TwoFieldLayout& layout, const InterfaceData& d,
                                 bool stabilize, const WeightScheme& w, double multiplier_scale) {
  const int n = layout.num_dofs();
  const int m = static_cast<int>(layout.interface().size());
  TripletAccumulator acc;
  Vector rhs = Vector::Zero(n + m);
  Vector primal = Vector::Zero(n);
  add_bulk(layout, d, acc, primal);
  for (int s = 0; s < m; ++s) {
    const SegmentKernel k = segment_kernel(layout, layout.interface()[s], d, w);
    Matrix6 pen = Matrix6::Zero();
    Vector6 b = Vector6::Zero();
    for (std::size_t q = 0; q < k.rule.size(); ++q) {
      pen += k.rule.weights[q] * k.gamma * k.jump[q] * k.jump[q].transpose();
      b += k.rule.weights[q] * k.jump[q];
    }
    acc.add_symmetric(k.dofs, pen);
    for (int i = 0; i < 6; ++i) {
      acc.add(n + s, k.dofs[i], multiplier_scale * b[i]);
      acc.add(k.dofs[i], n + s, multiplier_scale * b[i]);
    }
  }
  if (stabilize)
    acc.add_matrix(SparseMatrix(-multiplier_scale * d.stab_weight *
                                multiplier_jump_stabilization(layout)),
                   n, n);
  add_flux_jump_load(layout, d, w, primal);
  rhs.head(n) = primal;
  return finish(acc, std::move(rhs), n + m, layout, d, BlockStructure{n, m});
}

}  // namespace detail

SparseSystem assemble_multiplier_interface(const TwoFieldLayout& layout, const InterfaceData& d,
                                           bool stabilize, const WeightScheme& w) {
  return detail::assemble_multiplier(layout, d, stabilize, w, 1.0);
}

InterfaceOperators assemble_interface_operators(const TwoFieldLayout& layout,
                                                const InterfaceData& d, const WeightScheme& w) {
  const int n = layout.num_dofs();
  const int m = static_cast<int>(layout.interface().size());
  TripletAccumulator a;
  TripletAccumulator pen;
  TripletAccumulator jump;
  TripletAccumulator flux;
  Vector unused = Vector::Zero(n);
  detail::add_bulk(layout, d, a, unused);
  for (int s = 0; s < m; ++s) {
    const SegmentKernel k = detail::segment_kernel(layout, layout.interface()[s], d, w);
    Matrix6 p = Matrix6::Zero();
    Vector6 b = Vector6::Zero();
    for (std::size_t q = 0; q < k.rule.size(); ++q) {
      p += k.rule.weights[q] * k.gamma * k.jump[q] * k.jump[q].transpose();
      b += k.rule.weights[q] * k.jump[q];
    }
    pen.add_symmetric(k.dofs, p);
    for (int i = 0; i < 6; ++i) {
      jump.add(s, k.dofs[i], b[i]);
      flux.add(s, k.dofs[i], -k.flux[i]);
    }
  }
  return {a.build(n), pen.build(n), jump.build(m, n), flux.build(m, n)};
}

JumpAverage segment_jump(const TwoFieldLayout& layout, const Vector& u, int s, const Point& x) {
  const auto& seg = layout.interface()[s];
  const double u1 = layout.evaluate(u, 1, seg.elements[0], x);
  const double u2 = layout.evaluate(u, 2, seg.elements[1], x);
  return jump_and_average(u1, u2, ResolvedWeights{});
}

double segment_flux_average(const TwoFieldLayout& layout, const Vector& u, int s,
                            const InterfaceData& d, const WeightScheme& w) {
  const auto& seg = layout.interface()[s];
  const ResolvedWeights r = resolve_weights(w, d.eps1, d.eps2, seg.fractions, seg.cut);
  return r.w1 * d.eps1 * layout.gradient(u, 1, seg.elements[0]).dot(seg.normal) +
         r.w2 * d.eps2 * layout.gradient(u, 2, seg.elements[1]).dot(seg.normal);
}

}  // namespace alfem
