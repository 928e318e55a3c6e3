#pragma once

#include <functional>
#include <vector>

#include "alfem/sparse_system.hpp"

namespace alfem {

struct NewtonReport {
  int iterations = 0;
  std::vector<double> residual_history;  ///< max-norm, one entry per iterate including x0
  bool converged = false;
  std::vector<int> active_set_history;   ///< active branch count per iterate
  /// True when the run stopped because the active set repeated without progress.
  bool stagnated = false;
};

struct NewtonOptions {
  double tolerance = 1e-10;
  int max_iterations = 50;
};

/// Piecewise-smooth residual with its generalized derivative. `active_set`
/// reports which [·]± branches are active at x (may be empty for smooth maps).
struct SemismoothProblem {
  std::function<Vector(const Vector&)> residual;
  std::function<SparseMatrix(const Vector&)> jacobian;
  std::function<std::vector<char>(const Vector&)> active_set;
};

/// Semismooth Newton. Stops when |r|∞ <= tolerance, or when the active set of
/// two consecutive iterates coincides and the residual no longer decreases.
/// Exceeding max_iterations returns converged = false rather than throwing.
std::pair<Vector, NewtonReport> semismooth_newton(const SemismoothProblem& problem, Vector x0,
                                                  const NewtonOptions& options = {});

}  // namespace alfem
