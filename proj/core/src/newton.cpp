#include "alfem/newton.hpp"

#include <algorithm>

#include "alfem/solver.hpp"

namespace alfem {

namespace {

int count_active(const std::vector<char>& s) {
  return static_cast<int>(std::count(s.begin(), s.end(), char{1}));
}

}  // namespace

std::pair<Vector, NewtonReport> semismooth_newton(const SemismoothProblem& problem, Vector x,
                                                  const NewtonOptions& options) {
  NewtonReport report;
  auto active_of = [&](const Vector& v) {
    return problem.active_set ? problem.active_set(v) : std::vector<char>{};
  };
  Vector r = problem.residual(x);
  std::vector<char> active = active_of(x);
  report.residual_history.push_back(r.lpNorm<Eigen::Infinity>());
  report.active_set_history.push_back(count_active(active));

  while (report.residual_history.back() > options.tolerance) {
    if (report.iterations >= options.max_iterations) return {x, report};
    const LinearSolver solver(problem.jacobian(x));
    x -= solver.solve(r);
    ++report.iterations;
    r = problem.residual(x);
    std::vector<char> next = active_of(x);
    const double norm = r.lpNorm<Eigen::Infinity>();
    const double previous = report.residual_history.back();
    report.residual_history.push_back(norm);
    report.active_set_history.push_back(count_active(next));
    if (norm > options.tolerance && next == active && norm >= 0.5 * previous) {
      report.stagnated = true;
      return {x, report};
    }
    active = std::move(next);
  }
  report.converged = true;
  return {x, report};
}

}  // namespace alfem
