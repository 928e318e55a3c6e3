#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "alfem/assembly.hpp"
#include "alfem/condition.hpp"
#include "alfem/error.hpp"
#include "alfem/fe.hpp"
#include "alfem/manufactured.hpp"
#include "alfem/newton.hpp"
#include "alfem/norms.hpp"
#include "alfem/quadrature.hpp"
#include "alfem/robin.hpp"
#include "alfem/solver.hpp"

using namespace alfem;

namespace {

Vector interpolate(const Mesh& m, const ScalarFunction& u) {
  Vector v(m.num_vertices());
  for (std::size_t i = 0; i < m.num_vertices(); ++i) v[i] = u(m.vertices()[i]);
  return v;
}

double integrate(const QuadratureRule& q, const ScalarFunction& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) s += q.weights[i] * f(q.points[i]);
  return s;
}

SparseMatrix dense_to_sparse(const Eigen::MatrixXd& d) {
  return d.sparseView();
}

}  // namespace

TEST(LocalStiffness, ReferenceTriangle) {
  const Eigen::Matrix3d k = local_stiffness({Point(0, 0), Point(1, 0), Point(0, 1)}, 1.0);
  Eigen::Matrix3d expected;
  expected << 1.0, -0.5, -0.5, -0.5, 0.5, 0.0, -0.5, 0.0, 0.5;
  EXPECT_LT((k - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(LocalStiffness, ScalesWithDiffusivity) {
  const std::array<Point, 3> v{Point(0.1, 0.2), Point(0.7, 0.3), Point(0.4, 0.9)};
  EXPECT_LT((local_stiffness(v, 2.0) - 2.0 * local_stiffness(v, 1.0)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(LocalStiffness, RowsSumToZero) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::array<Point, 3> v{Point(u(rng), u(rng)), Point(u(rng), u(rng)),
                                 Point(u(rng), u(rng))};
    if (std::abs(cross(v[1] - v[0], v[2] - v[0])) < 1e-3) continue;
    const Eigen::Matrix3d k = local_stiffness(v, 1.5);
    EXPECT_LT(k.rowwise().sum().cwiseAbs().maxCoeff(), 1e-12 * k.cwiseAbs().maxCoeff());
  }
}

TEST(LocalStiffness, DegenerateTriangleThrows) {
  EXPECT_THROW(local_stiffness({Point(0, 0), Point(1, 1), Point(2, 2)}, 1.0), DegenerateElement);
}

TEST(P1Element, BarycentricValues) {
  const P1Element el({Point(0, 0), Point(2, 0), Point(0, 2)});
  EXPECT_DOUBLE_EQ(el.area(), 2.0);
  const Eigen::Vector3d v = el.values(Point(0.5, 0.5));
  EXPECT_NEAR(v[0], 0.5, 1e-15);
  EXPECT_NEAR(v[1], 0.25, 1e-15);
  EXPECT_NEAR(v[2], 0.25, 1e-15);
}

TEST(Stiffness, SmallestMeshHasZeroRowSums) {
  const SparseSystem s = assemble_stiffness(build_structured_mesh(1), 1.0);
  const Eigen::MatrixXd a(s.matrix);
  EXPECT_LT(a.rowwise().sum().cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NEAR(a(0, 0), 1.0, 1e-15);
}

TEST(Stiffness, EnergyOfLinearFunction) {
  const Mesh m = build_structured_mesh(8);
  const SparseSystem s = assemble_stiffness(m, 1.0);
  const Vector u = interpolate(m, [](const Point& p) { return p.x(); });
  EXPECT_NEAR(u.dot(s.matrix * u), 1.0, 1e-13);
}

TEST(Stiffness, PiecewiseDiffusivity) {
  const FittedInterface fi = fit_interface_line(build_structured_mesh(8), 0.5);
  const SparseSystem s = assemble_stiffness(fi.mesh, std::array<double, 2>{2.0, 0.5});
  const Vector u = interpolate(fi.mesh, [](const Point& p) { return p.x(); });
  EXPECT_NEAR(u.dot(s.matrix * u), 2.0 * 0.5 + 0.5 * 0.5, 1e-13);
}

TEST(Stiffness, RejectsNonPositiveDiffusivity) {
  const Mesh m = build_structured_mesh(2);
  EXPECT_THROW(assemble_stiffness(m, 0.0), InvalidArgument);
  EXPECT_THROW(assemble_stiffness(m, -1.0), InvalidArgument);
}

TEST(Stiffness, SymmetricAndDeterministic) {
  const Mesh m = build_structured_mesh(16);
  const SparseSystem a = assemble_stiffness(m, 1.3);
  const SparseSystem b = assemble_stiffness(m, 1.3);
  EXPECT_EQ(symmetry_defect(a.matrix), 0.0);
  ASSERT_EQ(a.matrix.nonZeros(), b.matrix.nonZeros());
  EXPECT_EQ(relative_difference(a.matrix, b.matrix), 0.0);
}

TEST(Load, ConstantSourceIntegratesToArea) {
  const Vector b = assemble_load(build_structured_mesh(8), Source::constant(1.0));
  EXPECT_NEAR(b.sum(), 1.0, 1e-14);
}

TEST(Load, StepSourceIntegratesExactly) {
  for (int n : {3, 8}) {
    const Vector b = assemble_load(build_structured_mesh(n), step_source());
    EXPECT_NEAR(b.sum(), 0.5 - 3.5 * 0.5, 1e-13) << "n=" << n;
  }
}

TEST(Load, ZeroSourceGivesZero) {
  EXPECT_EQ(assemble_load(build_structured_mesh(4), Source{}).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(assemble_load(build_structured_mesh(4), Source::constant(0.0)).cwiseAbs().maxCoeff(),
            0.0);
}

TEST(Load, FirstMomentsOfLinearSource) {
  // Σ_i b_i x_i = ∫ f x for f = x since the P1 basis reproduces x.
  const Mesh m = build_structured_mesh(6);
  const Vector b = assemble_load(m, Source([](const Point& p) { return p.x(); }));
  const Vector x = interpolate(m, [](const Point& p) { return p.x(); });
  EXPECT_NEAR(b.dot(x), 1.0 / 3.0, 1e-14);
}

TEST(Quadrature, TriangleRulesAreExact) {
  const Point a(0, 0), b(1, 0), c(0, 1);
  for (TriangleRule rule : {TriangleRule::edge_midpoints, TriangleRule::interior,
                            TriangleRule::degree5}) {
    const QuadratureRule q = triangle_quadrature(a, b, c, rule);
    EXPECT_NEAR(q.measure(), 0.5, 1e-15);
    EXPECT_NEAR(integrate(q, [](const Point& p) { return p.x() * p.x(); }), 1.0 / 12, 1e-15);
    EXPECT_NEAR(integrate(q, [](const Point& p) { return p.x() * p.y(); }), 1.0 / 24, 1e-15);
    EXPECT_NEAR(integrate(q, [](const Point& p) { return p.y() * p.y(); }), 1.0 / 12, 1e-15);
  }
  const QuadratureRule q5 = triangle_quadrature(a, b, c, TriangleRule::degree5);
  // ∫ x^i y^j = i! j! / (i + j + 2)!
  EXPECT_NEAR(integrate(q5, [](const Point& p) { return std::pow(p.x(), 5); }), 1.0 / 42, 1e-15);
  EXPECT_NEAR(integrate(q5, [](const Point& p) { return p.x() * p.x() * std::pow(p.y(), 3); }),
              2.0 * 6.0 / 5040.0, 1e-15);
}

TEST(Quadrature, SegmentGaussIsExactToDegreeThree) {
  const QuadratureRule q = segment_quadrature(Point(0, 0), Point(2, 0), 2);
  EXPECT_NEAR(q.measure(), 2.0, 1e-15);
  EXPECT_NEAR(integrate(q, [](const Point& p) { return std::pow(p.x(), 3); }), 4.0, 1e-14);
  const QuadratureRule q5 = segment_quadrature(Point(0, 0), Point(0, 1), 5);
  EXPECT_NEAR(integrate(q5, [](const Point& p) { return std::pow(p.y(), 9); }), 0.1, 1e-15);
  EXPECT_THROW(segment_quadrature(Point(0, 0), Point(1, 0), 6), InvalidArgument);
}

TEST(Solver, Identity) {
  SparseSystem s;
  s.matrix = dense_to_sparse(Eigen::MatrixXd::Identity(3, 3));
  s.rhs = Vector::LinSpaced(3, 1.0, 3.0);
  EXPECT_EQ((solve_linear(s) - s.rhs).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Solver, SmallIndefiniteSystem) {
  Eigen::MatrixXd a(2, 2);
  a << 1, 1, 1, 0;
  const LinearSolver lu(dense_to_sparse(a));
  const Vector x = lu.solve(Vector::Unit(2, 0));
  EXPECT_NEAR(x[0], 0.0, 1e-15);
  EXPECT_NEAR(x[1], 1.0, 1e-15);
}

TEST(Solver, SingularMatrixReportsPivot) {
  Eigen::MatrixXd a(3, 3);
  a << 1, 1, 0, 1, 1, 0, 0, 0, 2;
  try {
    LinearSolver lu(dense_to_sparse(a));
    FAIL() << "expected SingularSystem";
  } catch (const SingularSystem& e) {
    EXPECT_GE(e.pivot(), 0);
    EXPECT_LT(e.pivot(), 3);
  }
}

TEST(Solver, StrongDirichletReproducesLinear) {
  const Mesh m = build_structured_mesh(8);
  SparseSystem s = assemble_stiffness(m, 1.0);
  s.rhs = Vector::Zero(s.size());
  const auto exact = linear(1.0, 2.0, -3.0);
  const std::vector<int> dofs = boundary_vertices(m, kAllSides);
  std::vector<double> values;
  for (int v : dofs) values.push_back(exact.u(m.vertices()[v]));
  set_dirichlet(s, dofs, values);
  const Vector u = solve_linear(s);
  EXPECT_LT((u - interpolate(m, exact.u)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Solver, NitscheResidualIsSmall) {
  const Mesh m = build_structured_mesh(32);
  const auto exact = sine_product();
  const SparseSystem s = assemble_dirichlet_nitsche(m, 1.0, 10.0, exact.source(), exact.u);
  const Vector u = solve_linear(s);
  EXPECT_LT(residual_norm(s.matrix, u, s.rhs), 1e-12 * s.rhs.cwiseAbs().maxCoeff());
}

TEST(Nitsche, ReproducesLinearFunctions) {
  const Mesh m = build_structured_mesh(8);
  for (double gamma0 : {10.0, 100.0}) {
    const auto exact = linear(1.0, 2.0, -3.0);
    const Vector u = solve_linear(assemble_dirichlet_nitsche(m, 1.0, gamma0, Source{}, exact.u));
    EXPECT_LT((u - interpolate(m, exact.u)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Nitsche, SymmetricPositiveDefinite) {
  const SparseSystem s =
      assemble_dirichlet_nitsche(build_structured_mesh(16), 1.0, 10.0, Source{}, nullptr);
  EXPECT_LT(symmetry_defect(s.matrix), 1e-15);
  EXPECT_TRUE(is_positive_definite(s));
}

TEST(Nitsche, ConvergesAtOptimalRates) {
  const auto exact = sine_product();
  std::vector<ErrorNorms> e;
  for (int n : {8, 16, 32}) {
    const Mesh m = build_structured_mesh(n);
    e.push_back(p1_errors(
        m, solve_linear(assemble_dirichlet_nitsche(m, 1.0, 10.0, exact.source(), exact.u)), exact));
  }
  for (std::size_t k = 1; k < e.size(); ++k) {
    EXPECT_NEAR(observed_order(e[k - 1].h1, e[k].h1), 1.0, 0.15);
    EXPECT_NEAR(observed_order(e[k - 1].l2, e[k].l2), 2.0, 0.3);
  }
}

TEST(Condition, DiagonalMatrices) {
  EXPECT_NEAR(estimate_condition(dense_to_sparse(Eigen::MatrixXd::Identity(5, 5))).kappa2, 1.0,
              1e-10);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 1e4;
  EXPECT_NEAR(estimate_condition(dense_to_sparse(d)).kappa2, 1e4, 1e2);
}

TEST(Condition, MatchesDenseEigenvalues) {
  const SparseSystem s =
      assemble_dirichlet_nitsche(build_structured_mesh(6), 1.0, 10.0, Source{}, nullptr);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig{Eigen::MatrixXd(s.matrix)};
  const double expected = eig.eigenvalues().maxCoeff() / eig.eigenvalues().minCoeff();
  EXPECT_NEAR(estimate_condition(s.matrix).kappa2, expected, 1e-6 * expected);
}

TEST(Newton, PiecewiseLinearScalar) {
  // r(x) = x + [x - 1]_+ has the unique root 0.
  SemismoothProblem p;
  p.residual = [](const Vector& x) { return Vector::Constant(1, x[0] + std::max(x[0] - 1.0, 0.0)); };
  p.jacobian = [](const Vector& x) {
    Eigen::MatrixXd j(1, 1);
    j(0, 0) = x[0] > 1.0 ? 2.0 : 1.0;
    return dense_to_sparse(j);
  };
  p.active_set = [](const Vector& x) { return std::vector<char>{x[0] > 1.0}; };
  const auto [x, report] = semismooth_newton(p, Vector::Constant(1, 5.0));
  EXPECT_TRUE(report.converged);
  EXPECT_NEAR(x[0], 0.0, 1e-14);
  EXPECT_EQ(report.iterations, 2);
}

TEST(Newton, LinearProblemTakesOneStep) {
  const SparseSystem s =
      assemble_dirichlet_nitsche(build_structured_mesh(8), 1.0, 10.0, Source::constant(1.0), nullptr);
  SemismoothProblem p;
  p.residual = [&](const Vector& x) { return Vector(s.matrix * x - s.rhs); };
  p.jacobian = [&](const Vector&) { return s.matrix; };
  const auto [x, report] = semismooth_newton(p, Vector::Zero(s.size()));
  EXPECT_TRUE(report.converged);
  EXPECT_EQ(report.iterations, 1);
  EXPECT_LT(residual_norm(s.matrix, x, s.rhs), 1e-10);
}

TEST(Newton, IterationLimitIsReported) {
  // r(x) = x³ - 2 converges, but not in one step.
  SemismoothProblem p;
  p.residual = [](const Vector& x) { return Vector::Constant(1, x[0] * x[0] * x[0] - 2.0); };
  p.jacobian = [](const Vector& x) {
    Eigen::MatrixXd j(1, 1);
    j(0, 0) = 3.0 * x[0] * x[0];
    return dense_to_sparse(j);
  };
  const auto [x, report] = semismooth_newton(p, Vector::Constant(1, 3.0), {1e-12, 1});
  EXPECT_FALSE(report.converged);
  const auto [x2, report2] = semismooth_newton(p, Vector::Constant(1, 3.0), {1e-12, 50});
  EXPECT_TRUE(report2.converged);
  EXPECT_NEAR(x2[0], std::cbrt(2.0), 1e-12);
}
