#include "alfem/solver.hpp"

#include <Eigen/SparseCholesky>
#include <cmath>
#include <string>

#include "alfem/error.hpp"

namespace alfem {

namespace {

long parse_zero_column(const std::string& message) {
  const auto pos = message.find_last_of(' ');
  if (pos == std::string::npos) return -1;
  try {
    return std::stol(message.substr(pos + 1));
  } catch (...) {
    return -1;
  }
}

}  // namespace

LinearSolver::LinearSolver(const SparseMatrix& a, int refinement_steps)
    : matrix_(a), refinement_steps_(refinement_steps) {
  if (a.rows() != a.cols()) throw InvalidArgument("linear solve requires a square matrix");
  lu_ = std::make_unique<Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>>>();
  lu_->analyzePattern(matrix_);
  lu_->factorize(matrix_);
  if (lu_->info() != Eigen::Success) {
    // Eigen reports the 1-based column in elimination order.
    long pivot = parse_zero_column(lu_->lastErrorMessage());
    if (pivot > 0 && pivot <= a.cols()) pivot = lu_->colsPermutation().indices()[pivot - 1];
    throw SingularSystem("singular matrix: " + lu_->lastErrorMessage(), pivot);
  }
}

Vector LinearSolver::solve(const Vector& b) const {
  if (b.size() != size()) throw InvalidArgument("rhs length differs from matrix dimension");
  Vector x = lu_->solve(b);
  for (int k = 0; k < refinement_steps_; ++k) {
    const Vector r = b - matrix_ * x;
    x += lu_->solve(r);
  }
  if (!x.allFinite()) throw SingularSystem("solution is not finite", -1);
  return x;
}

Vector solve_linear(const SparseSystem& system) {
  const ReducedSystem r = reduce(system);
  if (r.free_dofs.empty()) return r.expand(Vector(), system);
  const LinearSolver solver(r.matrix);
  return r.expand(solver.solve(r.rhs), system);
}

double residual_norm(const SparseMatrix& a, const Vector& x, const Vector& b) {
  return (a * x - b).lpNorm<Eigen::Infinity>();
}

bool is_positive_definite(const SparseMatrix& a) {
  Eigen::SimplicialLLT<SparseMatrix> llt(a);
  return llt.info() == Eigen::Success;
}

bool is_positive_definite(const SparseSystem& system) {
  return is_positive_definite(reduce(system).matrix);
}

}  // namespace alfem
