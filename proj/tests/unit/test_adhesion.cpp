#include <gtest/gtest.h>

#include <cmath>

#include "alfem/adhesion.hpp"
#include "alfem/assembly.hpp"
#include "alfem/condition.hpp"
#include "alfem/cut.hpp"
#include "alfem/error.hpp"
#include "alfem/robin.hpp"
#include "alfem/solver.hpp"
#include "support.hpp"

using namespace alfem;
using alfem::testing::half_split;
using alfem::testing::layout_nodal_error;
using alfem::testing::two_field_data;

namespace {

const NewtonOptions kNewton{1e-10, 20};

// Flux ∂ₓu = a through x = 1/2; strong values on the left side only.
InterfaceData bar_data(const ExactSolution& e1, const ExactSolution& e2) {
  InterfaceData d = two_field_data(1.0, 1.0, e1, e2);
  d.outer.dirichlet = {BoundaryTag::left};
  return d;
}

// Half-disk configuration of the worked example.
struct HalfDisk {
  Mesh mesh;
  CutClassification cls;
  TwoFieldLayout layout;
  InterfaceData data;

  explicit HalfDisk(int n)
      : mesh(build_structured_mesh(n)),
        cls(classify_cut(mesh, LevelSet::half_circle(0.74))),
        layout(make_cut_layout(mesh, cls)) {
    data.eps1 = 2.0;
    data.eps2 = 0.5;
    data.gamma0 = 100.0;
    data.set_source(step_source());
    data.outer.dirichlet = {BoundaryTag::left, BoundaryTag::bottom};
  }
};

int count_active(const ContactState& s) {
  int n = 0;
  for (const ContactPoint& p : s.points) n += p.active;
  return n;
}

}  // namespace

TEST(AdhesionCoefficients, Reciprocity) {
  for (double kappa : {1e-8, 1e-3, 0.5, 1.0, 1e4})
    for (double gk : {1.0, 10.0, 100.0})
      for (double h : {1e-3, 0.1, 0.5}) {
        const AdhesionCoefficients c = adhesion_coefficients({kappa, gk}, h);
        EXPECT_NEAR(c.S * c.gamma1, 1.0, 1e-15);
        EXPECT_GT(c.gamma, 1.0 / kappa);
        EXPECT_LE(c.gamma, gk / h + 1.0 / kappa);
      }
}

TEST(StiffPenalty, ZeroComplianceIsRejected) {
  const FittedInterface fi = half_split(4);
  const TwoFieldLayout layout = make_fitted_layout(fi.mesh, fi.topology);
  EXPECT_THROW(assemble_stiff_penalty(layout, InterfaceData{}, 0.0), InvalidArgument);
}

TEST(StiffPenalty, SymmetricWithZeroRowSums) {
  const FittedInterface fi = half_split(8);
  const TwoFieldLayout layout = make_fitted_layout(fi.mesh, fi.topology);
  InterfaceData d;
  d.outer.dirichlet.clear();
  const SparseSystem s = assemble_stiff_penalty(layout, d, 0.3);
  EXPECT_EQ(symmetry_defect(s.matrix), 0.0);
  EXPECT_LT((s.matrix * Vector::Ones(s.size())).cwiseAbs().maxCoeff(), 1e-12 * max_abs(s.matrix));
}

TEST(StiffPenalty, InfiniteComplianceDecouples) {
  const FittedInterface fi = half_split(8);
  const TwoFieldLayout layout = make_fitted_layout(fi.mesh, fi.topology);
  InterfaceData d;
  d.eps1 = 2.0;
  const SparseSystem s = assemble_stiff_penalty(layout, d, kInfiniteCompliance);
  const InterfaceOperators op = assemble_interface_operators(layout, d, WeightScheme::harmonic());
  EXPECT_EQ(relative_difference(s.matrix, op.stiffness), 0.0);
}

TEST(StiffPenalty, SmallComplianceIsIllConditioned) {
  const FittedInterface fi = half_split(8);
  const TwoFieldLayout layout = make_fitted_layout(fi.mesh, fi.topology);
  const InterfaceData d;
  const double k1 = estimate_condition(assemble_stiff_penalty(layout, d, 1.0)).kappa2;
  const double k8 = estimate_condition(assemble_stiff_penalty(layout, d, 1e-8)).kappa2;
  RecordProperty("kappa2_ratio", std::to_string(k8 / k1));
  EXPECT_GE(k8 / k1, 1e6) << "kappa2(1)=" << k1 << " kappa2(1e-8)=" << k8;
}

TEST(Cohesive, ZeroComplianceIsInterfaceNitsche) {
  const FittedInterface fi = half_split(8);
  const TwoFieldLayout layout = make_fitted_layout(fi.mesh, fi.topology);
  InterfaceData d;
  d.eps1 = 2.0;
  d.eps2 = 0.5;
  d.gamma0 = 40.0;
  const WeightScheme w{WeightMode::harmonic, 1.0};
  const SparseSystem c = assemble_cohesive(layout, d, {0.0, 40.0}, w);
  const SparseSystem n = assemble_nitsche_interface(layout, d, w);
  EXPECT_LE(relative_difference(c.matrix, n.matrix), 1e-12);
}

TEST(Cohesive, InfiniteComplianceLimit) {
  // A - Σ_k (h_k/γ_κ)|Γ_k| ⟨⟨ε∂ₙφ_i⟩⟩⟨⟨ε∂ₙφ_j⟩⟩ with T_k = -⟨⟨ε∂ₙφ⟩⟩.
  const FittedInterface fi = half_split(8);
  const TwoFieldLayout layout = make_fitted_layout(fi.mesh, fi.topology);
  InterfaceData d;
  d.eps1 = 2.0;
  d.eps2 = 0.5;
  const double gk = 50.0;
  const WeightScheme w = WeightScheme::harmonic();
  const InterfaceOperators op = assemble_interface_operators(layout, d, w);
  Vector weights(layout.interface().size());
  for (std::size_t k = 0; k < layout.interface().size(); ++k) {
    const InterfaceSegment& s = layout.interface()[k];
    weights[k] = s.h / gk * s.length;
  }
  const SparseMatrix expected =
      op.stiffness - SparseMatrix(op.flux.transpose() * weights.asDiagonal() * op.flux);
  const SparseSystem c = assemble_cohesive(layout, d, {kInfiniteCompliance, gk}, w);
  EXPECT_LE(relative_difference(c.matrix, expected), 1e-12);
}

TEST(Cohesive, ReproducesBondedBar) {
  // u₁ = x, u₂ = x + κ: unit flux and ⟦u⟧ = -κ·1.
  const FittedInterface fi = half_split(8);
  const TwoFieldLayout layout = make_fitted_layout(fi.mesh, fi.topology);
  for (double kappa : {0.0, 1e-3, 0.5, 2.0}) {
    const ExactSolution e1 = linear(0.0, 1.0, 0.0), e2 = linear(kappa, 1.0, 0.0);
    const Vector u = solve_linear(
        assemble_cohesive(layout, bar_data(e1, e2), {kappa, 100.0}, WeightScheme::arithmetic()));
    EXPECT_LT(layout_nodal_error(layout, u, {e1, e2}), 1e-10) << "kappa=" << kappa;
  }
}

TEST(Cohesive, SolutionIsLinearInLoad) {
  const HalfDisk cfg(16);
  const WeightScheme w = WeightScheme::geometric(1.0);
  const Vector u = solve_linear(assemble_cohesive(cfg.layout, cfg.data, {0.5, 100.0}, w));
  InterfaceData scaled = cfg.data;
  const Source f = step_source();
  scaled.set_source(Source([f](const Point& x) { return 3.0 * f.value(x); }, f.discontinuities));
  const Vector u3 = solve_linear(assemble_cohesive(cfg.layout, scaled, {0.5, 100.0}, w));
  EXPECT_LT((u3 - 3.0 * u).cwiseAbs().maxCoeff(), 1e-11 * u3.cwiseAbs().maxCoeff());
}

TEST(AdhesiveContact, SeparatingLoadMatchesCohesive) {
  const FittedInterface fi = half_split(8);
  const TwoFieldLayout layout = make_fitted_layout(fi.mesh, fi.topology);
  const AdhesionParameters p{0.5, 100.0};
  const WeightScheme w = WeightScheme::arithmetic();
  const InterfaceData d = bar_data(linear(0.0, 1.0, 0.0), linear(p.kappa, 1.0, 0.0));
  const ContactSolution c = solve_adhesive_contact(layout, d, p, w, kNewton);
  ASSERT_TRUE(c.report.converged);
  const Vector cohesive = solve_linear(assemble_cohesive(layout, d, p, w));
  EXPECT_LT((c.u - cohesive).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_EQ(count_active(c.state), 0);
}

TEST(AdhesiveContact, PressingLoadMatchesFullContact) {
  const FittedInterface fi = half_split(8);
  const TwoFieldLayout layout = make_fitted_layout(fi.mesh, fi.topology);
  const AdhesionParameters p{0.5, 100.0};
  const WeightScheme w = WeightScheme::arithmetic();
  // Cohesive law alone would give ⟦u⟧ = +κ > 0: contact closes the gap.
  const InterfaceData d = bar_data(linear(0.0, -1.0, 0.0), linear(0.0, -1.0, 0.0));
  const ContactSolution c = solve_adhesive_contact(layout, d, p, w, kNewton);
  ASSERT_TRUE(c.report.converged);
  for (const ContactPoint& pt : c.state.points) EXPECT_LE(pt.gap, 1e-8);
  const Vector contact = solve_linear(assemble_adhesive_limit(layout, d, p, w, true));
  EXPECT_LT((c.u - contact).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_TRUE(verify_kkt(c.state, 1e-8).passed());
}

TEST(AdhesiveContact, WorkedExampleConverges) {
  for (int n : {16, 32}) {
    const HalfDisk cfg(n);
    const ContactSolution c = solve_adhesive_contact(cfg.layout, cfg.data, {0.5, 100.0},
                                                     WeightScheme::geometric(1.0), {1e-10, 50});
    ASSERT_TRUE(c.report.converged) << "n=" << n;
    const auto& h = c.report.active_set_history;
    ASSERT_GE(h.size(), 2u);
    EXPECT_EQ(h[h.size() - 1], h[h.size() - 2]);
    EXPECT_GT(count_active(c.state), 0);
    EXPECT_LT(count_active(c.state), static_cast<int>(c.state.points.size()));
  }
}

TEST(AdhesiveContact, WorkedExampleKkt) {
  const HalfDisk cfg(32);
  const ContactSolution c = solve_adhesive_contact(cfg.layout, cfg.data, {0.5, 100.0},
                                                   WeightScheme::geometric(1.0), {1e-10, 50});
  ASSERT_TRUE(c.report.converged);
  const KktReport k = verify_kkt(c.state, 1e-8);
  RecordProperty("kkt", std::to_string(k.constraint) + "," + std::to_string(k.multiplier_sign) +
                            "," + std::to_string(k.complementarity));
  EXPECT_TRUE(k.passed()) << "constraint " << k.constraint << " sign " << k.multiplier_sign
                          << " complementarity " << k.complementarity;
}

TEST(AdhesiveContact, ContactRegionGrowsWithPushingLoad) {
  const HalfDisk base(16);
  const Source f = step_source();
  int previous = -1;
  for (double push : {0.0, 2.0, 4.0}) {
    InterfaceData d = base.data;
    // Extra load on the disk side drives u₁ above u₂.
    d.f[0] = Source([f, push](const Point& x) { return f.value(x) + push; }, f.discontinuities);
    const ContactSolution c = solve_adhesive_contact(base.layout, d, {0.5, 100.0},
                                                     WeightScheme::geometric(1.0), {1e-10, 50});
    ASSERT_TRUE(c.report.converged);
    const int active = count_active(c.state);
    EXPECT_GE(active, previous) << "push=" << push;
    previous = active;
  }
}

TEST(BoundaryContact, FarObstacleIsNeumannProblem) {
  double previous = 0.0;
  for (int n : {16, 32}) {
    const Mesh m = build_structured_mesh(n);
    BoundaryContactData d;
    d.g = [](const Point&) { return 1e6; };
    d.f = Source::constant(1.0);
    const ContactSolution c = solve_boundary_contact(m, d, kNewton);
    ASSERT_TRUE(c.report.converged);
    EXPECT_EQ(count_active(c.state), 0);

    SparseSystem neumann = assemble_stiffness(m, 1.0);
    neumann.rhs = assemble_load(m, d.f);
    const std::array<BoundaryTag, 3> fixed{BoundaryTag::left, BoundaryTag::right, BoundaryTag::bottom};
    const std::vector<int> dofs = boundary_vertices(m, fixed);
    set_dirichlet(neumann, dofs, std::vector<double>(dofs.size(), 0.0));
    const double diff = (c.u - solve_linear(neumann)).cwiseAbs().maxCoeff();
    EXPECT_LT(diff, 0.05 / n);
    if (previous > 0.0) {
      EXPECT_GT(previous / diff, 1.5);
    }
    previous = diff;
  }
}

TEST(BoundaryContact, PullingLoadStaysInactive) {
  const Mesh m = build_structured_mesh(16);
  BoundaryContactData d;
  d.g = [](const Point&) { return 0.0; };
  d.f = Source::constant(-1.0);
  const ContactSolution c = solve_boundary_contact(m, d, kNewton);
  ASSERT_TRUE(c.report.converged);
  EXPECT_EQ(count_active(c.state), 0);
  const Vector open = solve_linear(assemble_boundary_contact_limit(m, d, false));
  EXPECT_LT((c.u - open).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(BoundaryContact, PushingLoadSatisfiesKkt) {
  const Mesh m = build_structured_mesh(16);
  BoundaryContactData d;
  d.g = [](const Point&) { return 0.0; };
  d.f = Source::constant(1.0);
  const ContactSolution c = solve_boundary_contact(m, d, kNewton);
  ASSERT_TRUE(c.report.converged);
  EXPECT_GT(count_active(c.state), 0);
  const KktReport k = verify_kkt(c.state, 1e-8);
  EXPECT_TRUE(k.passed()) << "constraint " << k.constraint << " sign " << k.multiplier_sign
                          << " complementarity " << k.complementarity;
}

TEST(BoundaryContact, PenetrationVanishesUnderRefinement) {
  double previous = 0.0;
  for (int n : {8, 16, 32, 64}) {
    BoundaryContactData d;
    d.g = [](const Point&) { return 0.0; };
    d.f = Source::constant(1.0);
    const ContactSolution c = solve_boundary_contact(build_structured_mesh(n), d, kNewton);
    ASSERT_TRUE(c.report.converged);
    const double gap = verify_kkt(c.state, 1e-8).constraint;
    RecordProperty("max_gap_n" + std::to_string(n), std::to_string(gap));
    if (previous > 0.0) {
      EXPECT_GT(previous / gap, 2.0) << "n=" << n;
    }
    previous = gap;
  }
}

TEST(Kkt, ZeroStatePasses) {
  ContactState s;
  s.points.resize(4);
  EXPECT_TRUE(verify_kkt(s, 1e-8).passed());
}

TEST(Kkt, ReportsViolationLocation) {
  ContactState s;
  s.points.resize(3);
  s.points[1].x = Point(0.25, 0.5);
  s.points[1].multiplier = 0.3;
  s.points[2].x = Point(0.75, 0.5);
  s.points[2].gap = 1e-3;
  const KktReport k = verify_kkt(s, 1e-8);
  EXPECT_FALSE(k.passed());
  EXPECT_FALSE(k.multiplier_sign_ok);
  EXPECT_DOUBLE_EQ(k.multiplier_sign, 0.3);
  EXPECT_EQ(k.multiplier_sign_at, Point(0.25, 0.5));
  EXPECT_FALSE(k.constraint_ok);
  EXPECT_EQ(k.constraint_at, Point(0.75, 0.5));
  EXPECT_TRUE(k.complementarity_ok);
}

TEST(Kkt, CohesiveSolutionUnderPressureFailsSign) {
  // Without the contact constraint the bar interpenetrates: ⟦u⟧ = +κ.
  const FittedInterface fi = half_split(8);
  const TwoFieldLayout layout = make_fitted_layout(fi.mesh, fi.topology);
  const AdhesionParameters p{0.5, 100.0};
  const WeightScheme w = WeightScheme::arithmetic();
  const InterfaceData d = bar_data(linear(0.0, -1.0, 0.0), linear(0.0, -1.0, 0.0));
  const ContactSolution open = solve_adhesive_contact(layout, d, p, w, {1e-10, 0});
  ContactState state = open.state;
  const Vector u = solve_linear(assemble_adhesive_limit(layout, d, p, w, false));
  for (ContactPoint& pt : state.points) {
    const JumpAverage ja = segment_jump(layout, u, pt.segment, pt.x);
    pt.gap = ja.jump;
    pt.flux = -1.0;
    pt.multiplier = pt.flux + ja.jump / p.kappa;
  }
  const KktReport k = verify_kkt(state, 1e-8);
  EXPECT_FALSE(k.constraint_ok);
  EXPECT_NEAR(k.constraint, p.kappa, 1e-8);
}
