#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "alfem/condition.hpp"
#include "alfem/cutfem.hpp"
#include "alfem/interface.hpp"
#include "alfem/norms.hpp"
#include "alfem/solver.hpp"
#include "support.hpp"

using namespace alfem;
using alfem::testing::two_field_data;

namespace {

// Least-squares slope of log(values) against log(1/n).
double fitted_order(const std::vector<int>& levels, const std::vector<double>& values) {
  const std::size_t m = levels.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = std::log(1.0 / levels[i]);
    const double y = std::log(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

// u_i = r²/ε_i + c_i around (1/2, 1/2), continuous with flux 2r on the circle of radius R.
std::array<ExactSolution, 2> radial_pieces(double eps1, double eps2, double radius) {
  auto piece = [](double eps, double shift) {
    ExactSolution e;
    e.u = [=](const Point& p) { return (p - Point(0.5, 0.5)).squaredNorm() / eps + shift; };
    e.grad = [=](const Point& p) { return Point(2.0 * (p - Point(0.5, 0.5)) / eps); };
    e.laplacian = [=](const Point&) { return 4.0 / eps; };
    return e;
  };
  return {piece(eps1, 0.0), piece(eps2, radius * radius * (1.0 / eps1 - 1.0 / eps2))};
}

double relative_energy_error(const TwoFieldLayout& layout, const Vector& u,
                             const std::array<ExactSolution, 2>& exact,
                             const std::array<double, 2>& eps) {
  const double norm = layout_errors(layout, Vector::Zero(u.size()), exact, eps).energy;
  return layout_errors(layout, u, exact, eps).energy / norm;
}

}  // namespace

TEST(GhostPenalty, TwoTriangleFace) {
  const Mesh m = Mesh::from_triangles({{0, 0}, {1, 0}, {1, 1}, {2, 0}}, {{0, 1, 2}, {1, 3, 2}});
  int shared = -1;
  for (std::size_t f = 0; f < m.num_facets(); ++f)
    if (!m.facets()[f].is_boundary()) shared = static_cast<int>(f);
  ASSERT_GE(shared, 0);
  const SparseSystem g = assemble_ghost_penalty(m, std::vector<int>{shared}, 1.0);
  // u = max(x - 1, 0): ∂ₓu jumps by 1 across x = 1.
  Vector u(4);
  u << 0.0, 0.0, 0.0, 1.0;
  EXPECT_NEAR(u.dot(g.matrix * u), 1.0, 1e-14);
}

TEST(GhostPenalty, LinearFunctionsAreInKernel) {
  const Mesh m = build_structured_mesh(16);
  const CutClassification cls = classify_cut(m, LevelSet::half_circle(0.74));
  const GhostPenaltyConfig cfg{0.1};
  EXPECT_LT(ghost_penalty_energy(m, cls, cfg, linear(0.3, -2.0, 5.0)), 1e-24);
  const SparseSystem g = assemble_ghost_penalty(m, cls, cfg);
  Vector u(m.num_vertices());
  for (std::size_t i = 0; i < m.num_vertices(); ++i)
    u[i] = 1.0 + 2.0 * m.vertices()[i].x() - m.vertices()[i].y();
  EXPECT_LT((g.matrix * u).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(GhostPenalty, EmptyFaceSetGivesZeroMatrix) {
  const Mesh m = build_structured_mesh(4);
  const SparseSystem g = assemble_ghost_penalty(m, std::vector<int>{}, 0.1);
  EXPECT_EQ(g.size(), static_cast<int>(m.num_vertices()));
  EXPECT_EQ(max_abs(g.matrix), 0.0);
}

TEST(GhostPenalty, SymmetricPositiveSemidefinite) {
  const Mesh m = build_structured_mesh(16);
  const CutClassification cls = classify_cut(m, LevelSet::circle({0.47, 0.52}, 0.31));
  const SparseSystem g = assemble_ghost_penalty(m, cls, {0.1});
  EXPECT_EQ(symmetry_defect(g.matrix), 0.0);
  const double norm = max_abs(g.matrix);
  std::mt19937 rng(11);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 100; ++trial) {
    Vector x(g.size());
    for (int i = 0; i < x.size(); ++i) x[i] = normal(rng);
    EXPECT_GE(x.dot(g.matrix * x), -1e-12 * norm * x.squaredNorm());
  }
}

TEST(GhostPenalty, WeakConsistency) {
  const std::vector<int> levels{8, 16, 32, 64};
  std::vector<double> values;
  for (int n : levels) {
    const Mesh m = build_structured_mesh(n);
    values.push_back(
        ghost_penalty_energy(m, classify_cut(m, LevelSet::half_circle(0.74)), {0.1}, sine_product()));
  }
  EXPECT_GE(fitted_order(levels, values), 1.0);
}

TEST(CutPoisson, QuarterDiskConvergence) {
  const ExactSolution exact = radial_bubble(Point(0, 0), 0.74);
  std::vector<double> l2;
  for (int n : {8, 16, 32, 64}) {
    const Mesh m = build_structured_mesh(n);
    const CutClassification cls = classify_cut(m, LevelSet::half_circle(0.74));
    CutPoissonData d;
    d.f = exact.source();
    d.g = exact.u;
    const CutProblem p = assemble_cut_poisson(m, cls, d, {0.1});
    EXPECT_LE(symmetry_defect(p.system.matrix), 1e-13);
    l2.push_back(layout_errors(p.layout, solve_linear(p.system), {exact, exact}).l2);
  }
  for (std::size_t k = 1; k < l2.size(); ++k) {
    const double rate = observed_order(l2[k - 1], l2[k]);
    EXPECT_GE(rate, 1.7);
    EXPECT_LE(rate, 2.3);
  }
}

TEST(CutPoisson, DiagonalStaysAwayFromZero) {
  const Mesh m = build_structured_mesh(16);
  for (double delta : {1e-1, 1e-3, 1e-5, 1e-8}) {
    const CutClassification cls = classify_cut(m, LevelSet::vertical_line(0.5 + delta));
    CutPoissonData d;
    d.f = Source::constant(1.0);
    const CutProblem p = assemble_cut_poisson(m, cls, d, {0.1});
    const Vector d_vec = p.system.matrix.diagonal();
    const std::vector<double> diag(d_vec.begin(), d_vec.end());
    std::vector<double> sorted = diag;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    const double median = sorted[sorted.size() / 2];
    EXPECT_GE(*std::min_element(diag.begin(), diag.end()), 1e-8 * median) << "delta=" << delta;
  }
}

TEST(CutStudy, ConditioningWithAndWithoutGhostPenalty) {
  CutStudyOptions o;
  o.offsets = {1e-1, 1e-4, 1e-8};
  o.levels = {8, 16};
  const CutStudyReport r = run_cut_study(o);
  ASSERT_EQ(r.kappa2_with.size(), o.offsets.size());
  ASSERT_EQ(r.errors.size(), o.offsets.size());
  ASSERT_EQ(r.gh_consistency.size(), o.levels.size());
  const auto [lo, hi] = std::minmax_element(r.kappa2_with.begin(), r.kappa2_with.end());
  EXPECT_LT(*hi / *lo, 10.0);
  EXPECT_GE(r.kappa2_without.back() / r.kappa2_without.front(), 1e3);

  std::ostringstream csv;
  write_cut_study_csv(csv, r);
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "offset,kappa2_with,kappa2_without,energy_error");
  int rows = 0;
  while (std::getline(in, line)) rows += !line.empty();
  EXPECT_EQ(rows, 3);
}

TEST(CutInterface, EqualDiffusivityIsSecondOrderInL2) {
  const ExactSolution exact = sine_product();
  std::vector<double> l2;
  for (int n : {8, 16, 32, 64}) {
    const Mesh m = build_structured_mesh(n);
    const CutClassification cls = classify_cut(m, LevelSet::circle({0.5, 0.5}, 0.3));
    const InterfaceData d = two_field_data(1.0, 1.0, exact, exact);
    const CutProblem p = assemble_cut_interface(m, cls, d, WeightScheme::harmonic(), {0.1});
    EXPECT_LE(symmetry_defect(p.system.matrix), 1e-13);
    l2.push_back(layout_errors(p.layout, solve_linear(p.system), {exact, exact}).l2);
  }
  for (std::size_t k = 1; k < l2.size(); ++k) {
    const double rate = observed_order(l2[k - 1], l2[k]);
    EXPECT_GE(rate, 1.7);
    EXPECT_LE(rate, 2.3);
  }
}

TEST(CutInterface, RobustWeightsAtHighContrast) {
  const Mesh m = build_structured_mesh(16);
  const CutClassification cls = classify_cut(m, LevelSet::circle({0.5, 0.5}, 0.3));
  auto run = [&](double eps1, double eps2) {
    const auto exact = radial_pieces(eps1, eps2, 0.3);
    InterfaceData d = two_field_data(eps1, eps2, exact[0], exact[1]);
    const CutProblem p = assemble_cut_interface(m, cls, d, WeightScheme::harmonic(), {0.1});
    return relative_energy_error(p.layout, solve_linear(p.system), exact, d.eps());
  };
  const double base = run(1.0, 1.0);
  for (const auto& [e1, e2] : {std::pair{1e4, 1.0}, std::pair{1.0, 1e4}}) {
    const double e = run(e1, e2);
    EXPECT_LT(e, 2.0 * base) << "eps=(" << e1 << "," << e2 << ")";
    EXPECT_GT(e, 0.5 * base) << "eps=(" << e1 << "," << e2 << ")";
  }
}

TEST(CutInterface, RobustWeightsConditionNoWorseThanGeometric) {
  const Mesh m = build_structured_mesh(16);
  const CutClassification cls = classify_cut(m, LevelSet::vertical_line(0.5 + 1e-6));
  InterfaceData d;
  d.eps1 = 1e4;
  d.eps2 = 1.0;
  const CutProblem robust = assemble_cut_interface(m, cls, d, WeightScheme::harmonic(), {0.1});
  const CutProblem geometric = assemble_cut_interface(m, cls, d, WeightScheme::geometric(), {0.1});
  const double k_r = estimate_condition(robust.system).kappa2;
  const double k_g = estimate_condition(geometric.system).kappa2;
  RecordProperty("kappa2_robust", std::to_string(k_r));
  RecordProperty("kappa2_geometric", std::to_string(k_g));
  EXPECT_LE(k_r, k_g);
}

TEST(CutInterface, FittedDegeneration) {
  const Mesh m = build_structured_mesh(8);
  const CutClassification cls = classify_cut(m, LevelSet::vertical_line(0.5));
  ASSERT_TRUE(cls.cut_elements.empty());
  InterfaceData d;
  d.eps1 = 3.0;
  d.eps2 = 0.2;
  const CutProblem cut = assemble_cut_interface(m, cls, d, WeightScheme::harmonic(), {0.1});
  const FittedInterface fi = fit_interface_line(m, 0.5);
  const TwoFieldLayout fitted = make_fitted_layout(fi.mesh, fi.topology);
  const SparseSystem ref = assemble_nitsche_interface(fitted, d, WeightScheme::harmonic());
  EXPECT_LE(relative_difference(cut.system.matrix, ref.matrix), 1e-12);
}

TEST(CutMultiplier, FittedDegeneration) {
  const Mesh m = build_structured_mesh(8);
  const CutClassification cls = classify_cut(m, LevelSet::vertical_line(0.5));
  InterfaceData d;
  const CutProblem cut = assemble_cut_multiplier_robust(m, cls, d, {0.1});
  const FittedInterface fi = fit_interface_line(m, 0.5);
  const TwoFieldLayout fitted = make_fitted_layout(fi.mesh, fi.topology);
  const SparseSystem ref = assemble_multiplier_interface(fitted, d, true, WeightScheme::arithmetic());
  EXPECT_LE(relative_difference(cut.system.matrix, ref.matrix), 1e-12);
  EXPECT_LE(symmetry_defect(cut.system.matrix), 1e-14);
}

TEST(CutMultiplier, MultiplierApproximatesNormalFlux) {
  // On a curved interface the exact -∂ₙu differs between neighbouring segments,
  // so the jump stabilization makes λ_h first-order accurate only.
  const ExactSolution lin = linear(0.2, 1.0, 2.0);
  for (double eps : {1.0, 3.0}) {
    double previous = 0.0;
    for (int n : {16, 32, 64}) {
      const Mesh m = build_structured_mesh(n);
      const CutClassification cls = classify_cut(m, LevelSet::circle({0.48, 0.53}, 0.29));
      const InterfaceData d = two_field_data(eps, eps, lin, lin);
      const CutProblem p = assemble_cut_multiplier_robust(m, cls, d, {0.1});
      const Vector x = solve_linear(p.system);
      EXPECT_LT(alfem::testing::layout_nodal_error(p.layout, x, {lin, lin}), 1e-3);
      double err = 0.0;
      for (std::size_t k = 0; k < p.layout.interface().size(); ++k) {
        const Point& nrm = p.layout.interface()[k].normal;
        err = std::max(err, std::abs(x[p.layout.num_dofs() + k] + nrm.x() + 2.0 * nrm.y()));
      }
      EXPECT_LT(err, 5.0 / n) << "eps=" << eps << " n=" << n;
      if (previous > 0.0) {
        EXPECT_GT(previous / err, 1.5) << "eps=" << eps << " n=" << n;
      }
      previous = err;
    }
  }
}

TEST(CutMultiplier, StraightInterfaceFluxIsExact) {
  const Mesh m = build_structured_mesh(16);
  const CutClassification cls = classify_cut(m, LevelSet::vertical_line(0.5 + 1e-2));
  const ExactSolution lin = linear(0.2, 1.0, 2.0);
  const CutProblem p = assemble_cut_multiplier_robust(m, cls, two_field_data(2.0, 2.0, lin, lin), {0.1});
  const Vector x = solve_linear(p.system);
  EXPECT_LT(alfem::testing::layout_nodal_error(p.layout, x, {lin, lin}), 1e-10);
  for (std::size_t k = 0; k < p.layout.interface().size(); ++k)
    EXPECT_NEAR(x[p.layout.num_dofs() + k], -1.0, 1e-9);
}

TEST(CutMultiplier, HighContrastIsSolvable) {
  const Mesh m = build_structured_mesh(16);
  const CutClassification cls = classify_cut(m, LevelSet::circle({0.5, 0.5}, 0.3));
  for (double contrast : {1.0, 1e6}) {
    const auto exact = radial_pieces(contrast, 1.0, 0.3);
    const InterfaceData d = two_field_data(contrast, 1.0, exact[0], exact[1]);
    const CutProblem p = assemble_cut_multiplier_robust(m, cls, d, {0.1});
    const Vector x = solve_linear(p.system);
    ASSERT_TRUE(x.allFinite());
    const double e = relative_energy_error(p.layout, x, exact, d.eps());
    RecordProperty("relative_energy_error_" + std::to_string(static_cast<int>(std::log10(contrast))),
                   std::to_string(e));
    EXPECT_LT(e, 0.5);
  }
}
