#include "alfem/robin.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "alfem/error.hpp"
#include "alfem/quadrature.hpp"

namespace alfem {

CouplingCoefficients coupling_coefficients(double kappa, double gamma_kappa, double h) {
  if (!(kappa >= 0.0)) throw InvalidArgument("compliance must be nonnegative");
  if (!(gamma_kappa > 0.0) || !(h > 0.0)) throw InvalidArgument("gamma_kappa and h must be positive");
  const double r = h / gamma_kappa;
  CouplingCoefficients c;
  if (std::isinf(kappa)) {
    c.S = 0.0;
    c.kappa_S = 1.0;
    c.one_minus_kappa_S = 0.0;
    c.kappa_one_minus_kappa_S = r;
    return c;
  }
  const double d = kappa + r;
  c.S = 1.0 / d;
  c.kappa_S = kappa / d;
  c.one_minus_kappa_S = r / d;
  c.kappa_one_minus_kappa_S = kappa * r / d;
  return c;
}

namespace {

struct FacetData {
  int facet;
  int triangle;
  Point normal;
  double h;
  P1Element element;
  std::array<int, 3> dofs;
  Eigen::Vector3d flux;  // ε∇φ_i·n
  QuadratureRule rule;
};

FacetData facet_data(const Mesh& mesh, int f, double eps) {
  const Facet& facet = mesh.facets()[f];
  const int t = facet.triangles[0];
  FacetData d{f, t, mesh.facet_normal(f, t), mesh.facet_lengths()[f],
              P1Element(mesh.triangle_points(t)), mesh.triangles()[t], Eigen::Vector3d::Zero(),
              segment_quadrature(mesh.vertices()[facet.vertices[0]],
                                 mesh.vertices()[facet.vertices[1]], 2)};
  for (int i = 0; i < 3; ++i) d.flux[i] = eps * d.element.gradient(i).dot(d.normal);
  return d;
}

bool is_robin(const RobinParameters& p, BoundaryTag tag) {
  return std::find(p.robin_tags.begin(), p.robin_tags.end(), tag) != p.robin_tags.end();
}

void check(const RobinParameters& p) {
  if (!(p.eps > 0.0)) throw InvalidArgument("diffusivity must be positive");
  if (!(p.kappa >= 0.0)) throw InvalidArgument("compliance must be nonnegative");
  if (!(p.gamma_kappa > 0.0)) throw InvalidArgument("gamma_kappa must be positive");
}

double eval(const ScalarFunction& f, const Point& x) { return f ? f(x) : 0.0; }
double eval(const FluxFunction& f, const Point& x, const Point& n) { return f ? f(x, n) : 0.0; }

// Strong values on every boundary vertex not lying on a Robin facet only.
void apply_dirichlet_sides(const Mesh& mesh, const RobinParameters& p, SparseSystem& s) {
  std::vector<BoundaryTag> others;
  for (BoundaryTag tag : kAllSides)
    if (!is_robin(p, tag)) others.push_back(tag);
  if (others.empty()) return;
  const auto& value = p.dirichlet_value ? p.dirichlet_value : p.u0;
  std::vector<int> dofs = boundary_vertices(mesh, others);
  std::vector<double> values;
  for (int v : dofs) values.push_back(eval(value, mesh.vertices()[v]));
  set_dirichlet(s, std::move(dofs), std::move(values));
}

SparseSystem bulk(const Mesh& mesh, const RobinParameters& p, TripletAccumulator& acc) {
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t)
    acc.add_symmetric(mesh.triangles()[t],
                      local_stiffness(mesh.triangle_points(static_cast<int>(t)), p.eps));
  SparseSystem s;
  s.rhs = assemble_load(mesh, p.f);
  return s;
}

}  // namespace

std::vector<int> robin_facets(const Mesh& mesh, const RobinParameters& p) {
  return boundary_facets(mesh, p.robin_tags);
}

SparseSystem assemble_robin_classic(const Mesh& mesh, const RobinParameters& p) {
  check(p);
  if (p.kappa == 0.0) throw InvalidArgument("classic Robin form requires kappa > 0");
  TripletAccumulator acc;
  SparseSystem s = bulk(mesh, p, acc);
  const bool flux_only = std::isinf(p.kappa);
  const double inv = flux_only ? 0.0 : 1.0 / p.kappa;
  for (int f : robin_facets(mesh, p)) {
    const FacetData d = facet_data(mesh, f, p.eps);
    Eigen::Matrix3d k = Eigen::Matrix3d::Zero();
    for (std::size_t q = 0; q < d.rule.size(); ++q) {
      const Point& x = d.rule.points[q];
      const double w = d.rule.weights[q];
      const Eigen::Vector3d phi = d.element.values(x);
      k += w * inv * phi * phi.transpose();
      const double data = (flux_only ? 0.0 : inv * eval(p.u0, x)) + eval(p.g, x, d.normal);
      for (int i = 0; i < 3; ++i) s.rhs[d.dofs[i]] += w * data * phi[i];
    }
    if (!flux_only) acc.add_symmetric(d.dofs, k);
  }
  s.matrix = acc.build(static_cast<int>(mesh.num_vertices()));
  apply_dirichlet_sides(mesh, p, s);
  return s;
}

SparseSystem assemble_robin_nitsche(const Mesh& mesh, const RobinParameters& p) {
  check(p);
  TripletAccumulator acc;
  SparseSystem s = bulk(mesh, p, acc);
  for (int f : robin_facets(mesh, p)) {
    const FacetData d = facet_data(mesh, f, p.eps);
    const CouplingCoefficients c = coupling_coefficients(p.kappa, p.gamma_kappa, d.h);
    Eigen::Matrix3d k = Eigen::Matrix3d::Zero();
    for (std::size_t q = 0; q < d.rule.size(); ++q) {
      const Point& x = d.rule.points[q];
      const double w = d.rule.weights[q];
      const Eigen::Vector3d phi = d.element.values(x);
      k += w * (-c.one_minus_kappa_S * (phi * d.flux.transpose() + d.flux * phi.transpose()) -
                c.kappa_one_minus_kappa_S * d.flux * d.flux.transpose() + c.S * phi * phi.transpose());
      const double u0 = c.S == 0.0 && c.one_minus_kappa_S == 0.0 ? 0.0 : eval(p.u0, x);
      const double g = eval(p.g, x, d.normal);
      const double s_r = c.S * u0 + c.kappa_S * g;
      const double t_r = c.one_minus_kappa_S * u0 + c.kappa_one_minus_kappa_S * g;
      for (int i = 0; i < 3; ++i) s.rhs[d.dofs[i]] += w * (s_r * phi[i] - t_r * d.flux[i]);
    }
    acc.add_symmetric(d.dofs, k);
  }
  s.matrix = acc.build(static_cast<int>(mesh.num_vertices()));
  apply_dirichlet_sides(mesh, p, s);
  return s;
}

SparseSystem assemble_robin_multiplier(const Mesh& mesh, const RobinParameters& p) {
  check(p);
  TripletAccumulator acc;
  SparseSystem s = bulk(mesh, p, acc);
  const std::vector<int> facets = robin_facets(mesh, p);
  const int n = static_cast<int>(mesh.num_vertices());
  const int m = static_cast<int>(facets.size());
  Vector rhs = Vector::Zero(n + m);
  rhs.head(n) = s.rhs;
  std::vector<double> lengths(m);
  for (int k = 0; k < m; ++k) {
    const FacetData d = facet_data(mesh, facets[k], p.eps);
    const CouplingCoefficients c = coupling_coefficients(p.kappa, p.gamma_kappa, d.h);
    lengths[k] = d.h;
    Eigen::Matrix3d mass = Eigen::Matrix3d::Zero();
    Eigen::Vector3d b = Eigen::Vector3d::Zero();
    double t_r = 0.0;
    for (std::size_t q = 0; q < d.rule.size(); ++q) {
      const Point& x = d.rule.points[q];
      const double w = d.rule.weights[q];
      const Eigen::Vector3d phi = d.element.values(x);
      mass += w * phi * phi.transpose();
      b += w * phi;
      const double u0 = c.S == 0.0 && c.one_minus_kappa_S == 0.0 ? 0.0 : eval(p.u0, x);
      const double g = eval(p.g, x, d.normal);
      for (int i = 0; i < 3; ++i) rhs[d.dofs[i]] += w * (c.S * u0 + c.kappa_S * g) * phi[i];
      t_r += w * (c.one_minus_kappa_S * u0 + c.kappa_one_minus_kappa_S * g);
    }
    acc.add_symmetric(d.dofs, c.S * mass);
    const int row = n + k;
    for (int i = 0; i < 3; ++i) {
      acc.add(row, d.dofs[i], -c.one_minus_kappa_S * b[i]);
      acc.add(d.dofs[i], row, -c.one_minus_kappa_S * b[i]);
    }
    acc.add(row, row, -c.kappa_one_minus_kappa_S * d.h);
    rhs[row] = -t_r;
  }

  // Neighbouring facets of the same side share a vertex.
  std::map<int, std::vector<int>> by_vertex;
  for (int k = 0; k < m; ++k)
    for (int v : mesh.facets()[facets[k]].vertices) by_vertex[v].push_back(k);
  for (const auto& [v, ks] : by_vertex) {
    if (ks.size() != 2) continue;
    const int a = ks[0];
    const int b = ks[1];
    if (mesh.boundary_tags()[facets[a]] != mesh.boundary_tags()[facets[b]]) continue;
    const double hv = 0.5 * (lengths[a] + lengths[b]);
    const double w = p.stab_weight * hv * hv;
    acc.add(n + a, n + a, -w);
    acc.add(n + b, n + b, -w);
    acc.add(n + a, n + b, w);
    acc.add(n + b, n + a, w);
  }

  s.matrix = acc.build(n + m);
  s.rhs = std::move(rhs);
  s.blocks = BlockStructure{n, m};
  apply_dirichlet_sides(mesh, p, s);
  return s;
}

SparseSystem assemble_dirichlet_nitsche(const Mesh& mesh, double eps, double gamma0,
                                        const Source& f, const ScalarFunction& g) {
  if (!(eps > 0.0) || !(gamma0 > 0.0)) throw InvalidArgument("eps and gamma0 must be positive");
  TripletAccumulator acc;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t)
    acc.add_symmetric(mesh.triangles()[t],
                      local_stiffness(mesh.triangle_points(static_cast<int>(t)), eps));
  SparseSystem s;
  s.rhs = assemble_load(mesh, f);
  for (std::size_t fi = 0; fi < mesh.num_facets(); ++fi) {
    if (!mesh.facets()[fi].is_boundary()) continue;
    const FacetData d = facet_data(mesh, static_cast<int>(fi), eps);
    const double gamma = gamma0 / d.h;
    Eigen::Matrix3d k = Eigen::Matrix3d::Zero();
    for (std::size_t q = 0; q < d.rule.size(); ++q) {
      const Point& x = d.rule.points[q];
      const double w = d.rule.weights[q];
      const Eigen::Vector3d phi = d.element.values(x);
      k += w * (-(phi * d.flux.transpose() + d.flux * phi.transpose()) +
                gamma * phi * phi.transpose());
      const double gx = eval(g, x);
      for (int i = 0; i < 3; ++i) s.rhs[d.dofs[i]] += w * gx * (gamma * phi[i] - d.flux[i]);
    }
    acc.add_symmetric(d.dofs, k);
  }
  s.matrix = acc.build(static_cast<int>(mesh.num_vertices()));
  return s;
}

}  // namespace alfem
