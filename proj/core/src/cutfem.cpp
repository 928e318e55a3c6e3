#include "alfem/cutfem.hpp"

#include <iomanip>
#include <map>
#include <ostream>

#include "alfem/error.hpp"
#include "alfem/norms.hpp"
#include "alfem/quadrature.hpp"
#include "alfem/solver.hpp"
#include "segment_kernel.hpp"

namespace alfem {

namespace {

// Vertices of the two triangles at face f and ⟦∂ₙφ_v⟧ for each of them.
struct FaceJump {
  std::vector<int> vertices;
  Eigen::VectorXd jump;
  double h;
};

FaceJump face_jump(const Mesh& mesh, int f) {
  const Facet& facet = mesh.facets()[f];
  if (facet.is_boundary()) throw InvalidArgument("ghost faces must be interior");
  const int t1 = facet.triangles[0];
  const int t2 = facet.triangles[1];
  const Point n = mesh.facet_normal(f, t1);
  std::map<int, double> jump;
  const P1Element e1(mesh.triangle_points(t1));
  const P1Element e2(mesh.triangle_points(t2));
  for (int i = 0; i < 3; ++i) {
    jump[mesh.triangles()[t1][i]] += e1.gradient(i).dot(n);
    jump[mesh.triangles()[t2][i]] -= e2.gradient(i).dot(n);
  }
  FaceJump out;
  out.h = mesh.facet_lengths()[f];
  out.jump.resize(static_cast<int>(jump.size()));
  int k = 0;
  for (const auto& [v, j] : jump) {
    out.vertices.push_back(v);
    out.jump[k++] = j;
  }
  return out;
}

}  // namespace

SparseSystem assemble_ghost_penalty(const Mesh& mesh, std::span<const int> faces, double gamma_g) {
  if (gamma_g < 0.0) throw InvalidArgument("ghost penalty parameter must be nonnegative");
  TripletAccumulator acc;
  for (int f : faces) {
    const FaceJump fj = face_jump(mesh, f);
    acc.add_symmetric(fj.vertices, gamma_g * fj.h * fj.h * fj.jump * fj.jump.transpose());
  }
  SparseSystem s;
  const int n = static_cast<int>(mesh.num_vertices());
  s.matrix = acc.build(n);
  s.rhs = Vector::Zero(n);
  return s;
}

SparseSystem assemble_ghost_penalty(const Mesh& mesh, const CutClassification& cls,
                                    const GhostPenaltyConfig& cfg) {
  return assemble_ghost_penalty(mesh, cls.ghost_faces, cfg.gamma_g);
}

double ghost_penalty_energy(const Mesh& mesh, const CutClassification& cls,
                            const GhostPenaltyConfig& cfg, const ExactSolution& exact) {
  // Face by face rather than uᵀGu, which loses everything to cancellation for
  // nearly linear u.
  double energy = 0.0;
  for (int f : cls.ghost_faces) {
    const FaceJump fj = face_jump(mesh, f);
    double jump = 0.0;
    for (std::size_t k = 0; k < fj.vertices.size(); ++k)
      jump += fj.jump[static_cast<int>(k)] * exact.u(mesh.vertices()[fj.vertices[k]]);
    energy += cfg.gamma_g * fj.h * fj.h * jump * jump;
  }
  return energy;
}

void add_ghost_penalty(const TwoFieldLayout& layout, int field, double gamma_g, double scale,
                       TripletAccumulator& acc) {
  if (gamma_g == 0.0) return;
  for (int f : layout.ghost_faces(field)) {
    const FaceJump fj = face_jump(layout.mesh(), f);
    std::vector<int> dofs;
    for (int v : fj.vertices) dofs.push_back(layout.dof(field, v));
    acc.add_symmetric(dofs, gamma_g * scale * fj.h * fj.h * fj.jump * fj.jump.transpose());
  }
}

namespace {

// Nitsche terms for u = g on a straight piece of the boundary of field 1.
void add_nitsche_piece(const TwoFieldLayout& layout, int element, const Point& a, const Point& b,
                       const Point& normal, double h, const CutPoissonData& d,
                       TripletAccumulator& acc, Vector& rhs) {
  const P1Element el(layout.mesh().triangle_points(element));
  const auto dofs = layout.element_dofs(1, element);
  Eigen::Vector3d flux;
  for (int i = 0; i < 3; ++i) flux[i] = d.eps * el.gradient(i).dot(normal);
  const double gamma = d.gamma0 / h;
  const QuadratureRule q = segment_quadrature(a, b, 2);
  Eigen::Matrix3d k = Eigen::Matrix3d::Zero();
  for (std::size_t i = 0; i < q.size(); ++i) {
    const Eigen::Vector3d phi = el.values(q.points[i]);
    const double w = q.weights[i];
    k += w * (-(phi * flux.transpose() + flux * phi.transpose()) + gamma * phi * phi.transpose());
    const double g = d.g ? d.g(q.points[i]) : 0.0;
    for (int j = 0; j < 3; ++j) rhs[dofs[j]] += w * g * (gamma * phi[j] - flux[j]);
  }
  acc.add_symmetric(dofs, k);
}

}  // namespace

CutProblem assemble_cut_poisson(const Mesh& mesh, const CutClassification& cls,
                                const CutPoissonData& d, const GhostPenaltyConfig& cfg) {
  if (!(d.eps > 0.0) || !(d.gamma0 > 0.0)) throw InvalidArgument("eps and gamma0 must be positive");
  CutProblem p{make_cut_layout(mesh, cls, {true, false}), {}};
  const TwoFieldLayout& l = p.layout;
  const int n = l.num_dofs();
  TripletAccumulator acc;
  Vector rhs = Vector::Zero(n);
  InterfaceData bulk;
  bulk.eps1 = d.eps;
  bulk.f = {d.f, Source()};
  detail::add_bulk(l, bulk, acc, rhs);
  for (const auto& s : l.interface())
    add_nitsche_piece(l, s.elements[0], s.p0, s.p1, s.normal, s.h, d, acc, rhs);
  for (const auto& b : l.boundary())
    add_nitsche_piece(l, b.element, b.p0, b.p1, b.normal, b.h, d, acc, rhs);
  add_ghost_penalty(l, 1, cfg.gamma_g, d.eps, acc);
  p.system.matrix = acc.build(n);
  p.system.rhs = std::move(rhs);
  return p;
}

namespace {

CutProblem with_ghost_penalty(TwoFieldLayout layout, SparseSystem system, const InterfaceData& d,
                              const GhostPenaltyConfig& cfg) {
  TripletAccumulator acc;
  acc.add_matrix(system.matrix);
  add_ghost_penalty(layout, 1, cfg.gamma_g, d.eps1, acc);
  add_ghost_penalty(layout, 2, cfg.gamma_g, d.eps2, acc);
  system.matrix = acc.build(system.size());
  return {std::move(layout), std::move(system)};
}

}  // namespace

CutProblem assemble_cut_interface(const Mesh& mesh, const CutClassification& cls,
                                  const InterfaceData& d, const WeightScheme& w,
                                  const GhostPenaltyConfig& cfg) {
  TwoFieldLayout layout = make_cut_layout(mesh, cls);
  SparseSystem s = assemble_nitsche_interface(layout, d, w);
  return with_ghost_penalty(std::move(layout), std::move(s), d, cfg);
}

CutProblem assemble_cut_multiplier_robust(const Mesh& mesh, const CutClassification& cls,
                                          const InterfaceData& d, const GhostPenaltyConfig& cfg) {
  TwoFieldLayout layout = make_cut_layout(mesh, cls);
  const double omega = harmonic_omega(d.eps1, d.eps2);
  const WeightScheme w{WeightMode::arithmetic, omega};
  SparseSystem s = detail::assemble_multiplier(layout, d, true, w, omega);
  return with_ghost_penalty(std::move(layout), std::move(s), d, cfg);
}

CutStudyReport run_cut_study(const CutStudyOptions& options) {
  CutStudyReport r;
  const Mesh mesh = build_structured_mesh(options.n);
  const ExactSolution exact = sine_product();
  CutPoissonData d;
  d.gamma0 = options.gamma0;
  d.f = exact.source();
  d.g = exact.u;
  for (double delta : options.offsets) {
    const CutClassification cls = classify_cut(mesh, LevelSet::vertical_line(0.5 + delta));
    const CutProblem with = assemble_cut_poisson(mesh, cls, d, {options.gamma_g});
    const CutProblem without = assemble_cut_poisson(mesh, cls, d, {0.0});
    r.offsets.push_back(delta);
    r.kappa2_with.push_back(estimate_condition(with.system, options.condition).kappa2);
    r.kappa2_without.push_back(estimate_condition(without.system, options.condition).kappa2);
    const Vector u = solve_linear(with.system);
    r.errors.push_back(layout_errors(with.layout, u, {exact, exact}).energy);
  }
  for (int n : options.levels) {
    const Mesh m = build_structured_mesh(n);
    const CutClassification cls = classify_cut(m, LevelSet::half_circle(0.74));
    r.levels.push_back(n);
    r.gh_consistency.push_back(ghost_penalty_energy(m, cls, {options.gamma_g}, exact));
  }
  return r;
}

void write_cut_study_csv(std::ostream& os, const CutStudyReport& report) {
  os << "offset,kappa2_with,kappa2_without,energy_error\n";
  os << std::scientific << std::setprecision(16);
  for (std::size_t i = 0; i < report.offsets.size(); ++i)
    os << report.offsets[i] << ',' << report.kappa2_with[i] << ',' << report.kappa2_without[i]
       << ',' << report.errors[i] << '\n';
}

}  // namespace alfem
