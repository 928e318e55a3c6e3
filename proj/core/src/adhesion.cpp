#include "alfem/adhesion.hpp"

#include <algorithm>
#include <cmath>

#include "alfem/error.hpp"
#include "alfem/quadrature.hpp"
#include "alfem/solver.hpp"
#include "segment_kernel.hpp"

namespace alfem {

using detail::Matrix6;
using detail::SegmentKernel;
using detail::Vector6;

AdhesionCoefficients adhesion_coefficients(const AdhesionParameters& p, double h) {
  if (!(p.kappa > 0.0)) throw InvalidArgument("adhesive contact requires kappa > 0");
  const CouplingCoefficients c = coupling_coefficients(p.kappa, p.gamma_kappa, h);
  AdhesionCoefficients a;
  a.S = c.S;
  a.gamma1 = std::isinf(p.kappa) ? p.kappa : p.kappa + h / p.gamma_kappa;
  a.gamma = p.gamma_kappa / h + (std::isinf(p.kappa) ? 0.0 : 1.0 / p.kappa);
  return a;
}

namespace {

SparseSystem finish(TripletAccumulator& acc, Vector rhs, const TwoFieldLayout& layout,
                    const InterfaceData& d) {
  std::vector<int> dofs;
  std::vector<double> values;
  detail::add_outer_boundary(layout, d.outer, d.eps(), rhs, dofs, values);
  SparseSystem s;
  s.matrix = acc.build(layout.num_dofs());
  s.rhs = std::move(rhs);
  set_dirichlet(s, std::move(dofs), std::move(values));
  return s;
}

// Cohesive segment matrix: -(1-κS)(F Jᵀ + J Fᵀ) - κ(1-κS) F Fᵀ + S J Jᵀ.
Matrix6 cohesive_block(const SegmentKernel& k, const CouplingCoefficients& c) {
  Matrix6 m = Matrix6::Zero();
  for (std::size_t q = 0; q < k.rule.size(); ++q) {
    const Vector6& j = k.jump[q];
    m += k.rule.weights[q] *
         (-c.one_minus_kappa_S * (k.flux * j.transpose() + j * k.flux.transpose()) -
          c.kappa_one_minus_kappa_S * k.flux * k.flux.transpose() + c.S * j * j.transpose());
  }
  return m;
}

// Contact bracket argument P·u with P = κS ⟦φ⟧ - κ(1-κS) ⟨⟨ε∂ₙφ⟩⟩ = ⟦φ⟧ - γ⁻¹λ(φ),
// and γ = 1/(κ(1-κS)).
struct Bracket {
  std::vector<Vector6> p;
  double gamma;
};

Bracket bracket(const SegmentKernel& k, const CouplingCoefficients& c) {
  Bracket b;
  b.gamma = 1.0 / c.kappa_one_minus_kappa_S;
  for (const auto& j : k.jump) b.p.push_back(c.kappa_S * j - c.kappa_one_minus_kappa_S * k.flux);
  return b;
}

double local_dot(const Vector6& a, const std::array<int, 6>& dofs, const Vector& u) {
  double s = 0.0;
  for (int i = 0; i < 6; ++i) s += a[i] * u[dofs[i]];
  return s;
}

// Newton on the free unknowns of a system whose linear part is `lin`.
template <class AddNonlinear, class ActiveSet>
std::pair<Vector, NewtonReport> constrained_newton(const SparseSystem& lin, const Vector& guess,
                                                   AddNonlinear add_nonlinear, ActiveSet active,
                                                   const NewtonOptions& options) {
  const ReducedSystem red = reduce(lin);
  const int n = lin.size();
  auto full = [&](const Vector& x) { return red.expand(x, lin); };
  auto restrict_vec = [&](const Vector& v) {
    Vector r(static_cast<int>(red.free_dofs.size()));
    for (std::size_t k = 0; k < red.free_dofs.size(); ++k) r[static_cast<int>(k)] = v[red.free_dofs[k]];
    return r;
  };
  std::vector<int> map(n, -1);
  for (std::size_t k = 0; k < red.free_dofs.size(); ++k) map[red.free_dofs[k]] = static_cast<int>(k);

  SemismoothProblem prob;
  prob.residual = [&](const Vector& x) {
    const Vector u = full(x);
    Vector r = lin.matrix * u - lin.rhs;
    TripletAccumulator unused;
    add_nonlinear(u, r, unused, false);
    return restrict_vec(r);
  };
  prob.jacobian = [&](const Vector& x) {
    const Vector u = full(x);
    Vector r = Vector::Zero(n);
    TripletAccumulator acc;
    acc.add_matrix(lin.matrix);
    add_nonlinear(u, r, acc, true);
    const SparseMatrix jfull = acc.build(n);
    TripletAccumulator racc;
    for (int c = 0; c < jfull.outerSize(); ++c) {
      if (map[c] < 0) continue;
      for (SparseMatrix::InnerIterator it(jfull, c); it; ++it)
        if (map[it.row()] >= 0) racc.add(map[it.row()], map[c], it.value());
    }
    return racc.build(static_cast<int>(red.free_dofs.size()));
  };
  prob.active_set = [&](const Vector& x) { return active(full(x)); };
  auto [x, report] = semismooth_newton(prob, restrict_vec(guess), options);
  return {full(x), report};
}

}  // namespace

SparseSystem assemble_stiff_penalty(const TwoFieldLayout& layout, const InterfaceData& d,
                                    double kappa) {
  if (!(kappa > 0.0)) throw InvalidArgument("stiff penalty requires kappa > 0");
  TripletAccumulator acc;
  Vector rhs = Vector::Zero(layout.num_dofs());
  detail::add_bulk(layout, d, acc, rhs);
  if (!std::isinf(kappa)) {
    for (const auto& s : layout.interface()) {
      const SegmentKernel k = detail::segment_kernel(layout, s, d, WeightScheme::arithmetic());
      Matrix6 m = Matrix6::Zero();
      for (std::size_t q = 0; q < k.rule.size(); ++q)
        m += k.rule.weights[q] / kappa * k.jump[q] * k.jump[q].transpose();
      acc.add_symmetric(k.dofs, m);
    }
  }
  detail::add_flux_jump_load(layout, d, WeightScheme::arithmetic(), rhs);
  return finish(acc, std::move(rhs), layout, d);
}

SparseSystem assemble_cohesive(const TwoFieldLayout& layout, const InterfaceData& d,
                               const AdhesionParameters& p, const WeightScheme& w) {
  TripletAccumulator acc;
  Vector rhs = Vector::Zero(layout.num_dofs());
  detail::add_bulk(layout, d, acc, rhs);
  for (const auto& s : layout.interface()) {
    const SegmentKernel k = detail::segment_kernel(layout, s, d, w);
    acc.add_symmetric(k.dofs, cohesive_block(k, coupling_coefficients(p.kappa, p.gamma_kappa, s.h)));
  }
  detail::add_flux_jump_load(layout, d, w, rhs);
  return finish(acc, std::move(rhs), layout, d);
}

SparseSystem assemble_adhesive_limit(const TwoFieldLayout& layout, const InterfaceData& d,
                                     const AdhesionParameters& p, const WeightScheme& w,
                                     bool contact) {
  if (!(p.kappa > 0.0)) throw InvalidArgument("adhesive contact requires kappa > 0");
  TripletAccumulator acc;
  Vector rhs = Vector::Zero(layout.num_dofs());
  detail::add_bulk(layout, d, acc, rhs);
  for (const auto& s : layout.interface()) {
    const SegmentKernel k = detail::segment_kernel(layout, s, d, w);
    const CouplingCoefficients c = coupling_coefficients(p.kappa, p.gamma_kappa, s.h);
    Matrix6 m = cohesive_block(k, c);
    if (contact) {
      const Bracket b = bracket(k, c);
      for (std::size_t q = 0; q < k.rule.size(); ++q)
        m += k.rule.weights[q] * b.gamma * b.p[q] * b.p[q].transpose();
    }
    acc.add_symmetric(k.dofs, m);
  }
  detail::add_flux_jump_load(layout, d, w, rhs);
  return finish(acc, std::move(rhs), layout, d);
}

ContactSolution solve_adhesive_contact(const TwoFieldLayout& layout, const InterfaceData& d,
                                       const AdhesionParameters& p, const WeightScheme& w,
                                       const NewtonOptions& options) {
  if (!(p.kappa > 0.0)) throw InvalidArgument("adhesive contact requires kappa > 0");
  const SparseSystem lin = assemble_adhesive_limit(layout, d, p, w, false);
  const Vector guess = solve_linear(assemble_adhesive_limit(layout, d, p, w, true));

  struct Local {
    SegmentKernel kernel;
    Bracket bracket;
  };
  std::vector<Local> locals;
  for (const auto& s : layout.interface()) {
    SegmentKernel k = detail::segment_kernel(layout, s, d, w);
    const Bracket b = bracket(k, coupling_coefficients(p.kappa, p.gamma_kappa, s.h));
    locals.push_back({std::move(k), b});
  }
  auto add_nonlinear = [&](const Vector& u, Vector& r, TripletAccumulator& acc, bool jac) {
    for (const auto& l : locals) {
      Matrix6 m = Matrix6::Zero();
      for (std::size_t q = 0; q < l.kernel.rule.size(); ++q) {
        const double pu = local_dot(l.bracket.p[q], l.kernel.dofs, u);
        if (pu <= 0.0) continue;
        const double w8 = l.kernel.rule.weights[q] * l.bracket.gamma;
        for (int i = 0; i < 6; ++i) r[l.kernel.dofs[i]] += w8 * pu * l.bracket.p[q][i];
        if (jac) m += w8 * l.bracket.p[q] * l.bracket.p[q].transpose();
      }
      if (jac) acc.add_symmetric(l.kernel.dofs, m);
    }
  };
  auto active = [&](const Vector& u) {
    std::vector<char> a;
    for (const auto& l : locals)
      for (std::size_t q = 0; q < l.kernel.rule.size(); ++q)
        a.push_back(local_dot(l.bracket.p[q], l.kernel.dofs, u) > 0.0 ? 1 : 0);
    return a;
  };
  auto [u, report] = constrained_newton(lin, guess, add_nonlinear, active, options);

  ContactSolution sol;
  sol.u = u;
  sol.report = std::move(report);
  const double inv_kappa = std::isinf(p.kappa) ? 0.0 : 1.0 / p.kappa;
  for (std::size_t s = 0; s < locals.size(); ++s) {
    const auto& l = locals[s];
    const double sigma = local_dot(l.kernel.flux, l.kernel.dofs, u);
    for (std::size_t q = 0; q < l.kernel.rule.size(); ++q) {
      ContactPoint cp;
      cp.x = l.kernel.rule.points[q];
      cp.segment = static_cast<int>(s);
      cp.gap = local_dot(l.kernel.jump[q], l.kernel.dofs, u);
      cp.flux = sigma;
      cp.multiplier = sigma + inv_kappa * cp.gap;
      cp.active = local_dot(l.bracket.p[q], l.kernel.dofs, u) > 0.0;
      sol.state.points.push_back(cp);
      sol.state.active_faces.push_back(cp.active ? 1 : 0);
    }
  }
  return sol;
}

namespace {

struct ContactFacet {
  std::array<int, 3> dofs;
  Eigen::Vector3d flux;  // ε∇φ·n
  QuadratureRule rule;
  std::vector<Eigen::Vector3d> phi;
  double gamma;
  Point normal;
};

std::vector<ContactFacet> contact_facets(const Mesh& mesh, const BoundaryContactData& d) {
  std::vector<ContactFacet> out;
  for (int f : boundary_facets(mesh, d.contact_tags)) {
    const Facet& facet = mesh.facets()[f];
    const int t = facet.triangles[0];
    const P1Element el(mesh.triangle_points(t));
    ContactFacet c;
    c.dofs = mesh.triangles()[t];
    c.normal = mesh.facet_normal(f, t);
    for (int i = 0; i < 3; ++i) c.flux[i] = d.eps * el.gradient(i).dot(c.normal);
    c.rule = segment_quadrature(mesh.vertices()[facet.vertices[0]],
                                mesh.vertices()[facet.vertices[1]], 2);
    for (const auto& x : c.rule.points) c.phi.push_back(el.values(x));
    c.gamma = d.gamma0 / mesh.facet_lengths()[f];
    out.push_back(std::move(c));
  }
  return out;
}

double dot3(const Eigen::Vector3d& a, const std::array<int, 3>& dofs, const Vector& u) {
  return a[0] * u[dofs[0]] + a[1] * u[dofs[1]] + a[2] * u[dofs[2]];
}

SparseSystem contact_linear_part(const Mesh& mesh, const BoundaryContactData& d,
                                 const std::vector<ContactFacet>& facets, bool contact) {
  if (!(d.eps > 0.0) || !(d.gamma0 > 0.0)) throw InvalidArgument("eps and gamma0 must be positive");
  TripletAccumulator acc;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t)
    acc.add_symmetric(mesh.triangles()[t],
                      local_stiffness(mesh.triangle_points(static_cast<int>(t)), d.eps));
  SparseSystem s;
  s.rhs = assemble_load(mesh, d.f);
  for (const auto& c : facets) {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    for (std::size_t q = 0; q < c.rule.size(); ++q) {
      const double w = c.rule.weights[q];
      m -= w / c.gamma * c.flux * c.flux.transpose();
      if (contact) {
        const Eigen::Vector3d qv = c.phi[q] - c.flux / c.gamma;
        m += w * c.gamma * qv * qv.transpose();
        const double g = d.g ? d.g(c.rule.points[q]) : 0.0;
        for (int i = 0; i < 3; ++i) s.rhs[c.dofs[i]] += w * c.gamma * g * qv[i];
      }
    }
    acc.add_symmetric(c.dofs, m);
  }
  s.matrix = acc.build(static_cast<int>(mesh.num_vertices()));
  std::vector<BoundaryTag> others;
  for (BoundaryTag tag : kAllSides)
    if (std::find(d.contact_tags.begin(), d.contact_tags.end(), tag) == d.contact_tags.end())
      others.push_back(tag);
  std::vector<int> dofs = boundary_vertices(mesh, others);
  std::vector<double> values;
  for (int v : dofs) values.push_back(d.dirichlet_value ? d.dirichlet_value(mesh.vertices()[v]) : 0.0);
  set_dirichlet(s, std::move(dofs), std::move(values));
  return s;
}

}  // namespace

SparseSystem assemble_boundary_contact_limit(const Mesh& mesh, const BoundaryContactData& d,
                                             bool contact) {
  return contact_linear_part(mesh, d, contact_facets(mesh, d), contact);
}

ContactSolution solve_boundary_contact(const Mesh& mesh, const BoundaryContactData& d,
                                       const NewtonOptions& options) {
  const auto facets = contact_facets(mesh, d);
  const SparseSystem lin = contact_linear_part(mesh, d, facets, false);
  Vector guess;
  try {
    guess = solve_linear(contact_linear_part(mesh, d, facets, true));
  } catch (const SingularSystem& e) {
    throw SingularSystem(std::string(e.what()) + "; increase gamma0", e.pivot());
  }
  auto obstacle = [&](const Point& x) { return d.g ? d.g(x) : 0.0; };
  // Bracket argument u - g - γ⁻¹ε∂ₙu at point q of facet c.
  auto argument = [&](const ContactFacet& c, std::size_t q, const Vector& u) {
    return dot3(c.phi[q], c.dofs, u) - obstacle(c.rule.points[q]) - dot3(c.flux, c.dofs, u) / c.gamma;
  };
  auto add_nonlinear = [&](const Vector& u, Vector& r, TripletAccumulator& acc, bool jac) {
    for (const auto& c : facets) {
      Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
      for (std::size_t q = 0; q < c.rule.size(); ++q) {
        const double a = argument(c, q, u);
        if (a <= 0.0) continue;
        const Eigen::Vector3d qv = c.phi[q] - c.flux / c.gamma;
        const double w = c.rule.weights[q] * c.gamma;
        for (int i = 0; i < 3; ++i) r[c.dofs[i]] += w * a * qv[i];
        if (jac) m += w * qv * qv.transpose();
      }
      if (jac) acc.add_symmetric(c.dofs, m);
    }
  };
  auto active = [&](const Vector& u) {
    std::vector<char> a;
    for (const auto& c : facets)
      for (std::size_t q = 0; q < c.rule.size(); ++q) a.push_back(argument(c, q, u) > 0.0 ? 1 : 0);
    return a;
  };
  ContactSolution sol;
  try {
    auto [u, report] = constrained_newton(lin, guess, add_nonlinear, active, options);
    sol.u = std::move(u);
    sol.report = std::move(report);
  } catch (const SingularSystem& e) {
    throw SingularSystem(std::string(e.what()) + "; increase gamma0", e.pivot());
  }
  for (std::size_t k = 0; k < facets.size(); ++k) {
    const auto& c = facets[k];
    for (std::size_t q = 0; q < c.rule.size(); ++q) {
      ContactPoint cp;
      cp.x = c.rule.points[q];
      cp.segment = static_cast<int>(k);
      cp.gap = dot3(c.phi[q], c.dofs, sol.u) - obstacle(cp.x);
      cp.flux = dot3(c.flux, c.dofs, sol.u);
      const double a = argument(c, q, sol.u);
      cp.active = a > 0.0;
      cp.multiplier = cp.active ? -c.gamma * a : 0.0;
      sol.state.points.push_back(cp);
      sol.state.active_faces.push_back(cp.active ? 1 : 0);
    }
  }
  return sol;
}

KktReport verify_kkt(const ContactState& state, double tol) {
  KktReport r;
  for (const auto& p : state.points) {
    const double c = std::max(p.gap, 0.0);
    const double s = std::max(p.multiplier, 0.0);
    const double x = std::abs(p.multiplier * p.gap);
    if (c > r.constraint) {
      r.constraint = c;
      r.constraint_at = p.x;
    }
    if (s > r.multiplier_sign) {
      r.multiplier_sign = s;
      r.multiplier_sign_at = p.x;
    }
    if (x > r.complementarity) {
      r.complementarity = x;
      r.complementarity_at = p.x;
    }
  }
  r.constraint_ok = r.constraint <= tol;
  r.multiplier_sign_ok = r.multiplier_sign <= tol;
  r.complementarity_ok = r.complementarity <= tol;
  return r;
}

}  // namespace alfem
