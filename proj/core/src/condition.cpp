#include "alfem/condition.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "alfem/error.hpp"
#include "alfem/solver.hpp"

namespace alfem {

namespace {

Vector random_unit(int n, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = dist(rng);
  return x.normalized();
}

// Iterates x <- op(x)/|op(x)| and returns the limit of |op(x)|.
template <class Op>
double dominant_magnitude(Op op, Vector x, const ConditionOptions& options) {
  double estimate = 0.0;
  for (int k = 0; k < options.iterations; ++k) {
    Vector y = op(x);
    const double norm = y.norm();
    if (norm == 0.0) return 0.0;
    x = y / norm;
    const bool settled = std::abs(norm - estimate) <= options.tolerance * norm;
    estimate = norm;
    if (settled && k > 4) break;
  }
  return estimate;
}

}  // namespace

ConditionEstimate estimate_condition(const SparseMatrix& a, const ConditionOptions& options) {
  const int n = static_cast<int>(a.rows());
  if (n == 0) throw InvalidArgument("condition estimate of an empty matrix");
  const LinearSolver solver(a);
  const Vector x0 = random_unit(n, options.seed);
  ConditionEstimate c;
  c.lambda_max = dominant_magnitude([&](const Vector& x) -> Vector { return a * x; }, x0, options);
  const double inv = dominant_magnitude([&](const Vector& x) { return solver.solve(x); }, x0, options);
  if (!(inv > 0.0) || !std::isfinite(inv)) throw SingularSystem("inverse iteration diverged", -1);
  c.lambda_min_abs = 1.0 / inv;
  c.kappa2 = std::max(1.0, c.lambda_max / c.lambda_min_abs);
  return c;
}

ConditionEstimate estimate_condition(const SparseSystem& system, const ConditionOptions& options) {
  return estimate_condition(reduce(system).matrix, options);
}

}  // namespace alfem
