#pragma once

#include <Eigen/SparseLU>
#include <memory>

#include "alfem/sparse_system.hpp"

namespace alfem {

/// Sparse LU factorization (COLAMD ordering) usable for symmetric indefinite
/// and nonsymmetric matrices. Solves apply iterative refinement.
class LinearSolver {
 public:
  /// Throws SingularSystem if a zero pivot is met; the pivot is a column index of `a`.
  explicit LinearSolver(const SparseMatrix& a, int refinement_steps = 2);

  Vector solve(const Vector& b) const;
  int size() const { return static_cast<int>(matrix_.rows()); }

 private:
  SparseMatrix matrix_;
  std::unique_ptr<Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>>> lu_;
  int refinement_steps_;
};

/// Solves the system after eliminating its constraints; returns the full vector.
Vector solve_linear(const SparseSystem& system);

/// max-norm of A x - b.
double residual_norm(const SparseMatrix& a, const Vector& x, const Vector& b);

/// Cholesky-based positivity check of the constraint-reduced matrix.
bool is_positive_definite(const SparseSystem& system);
bool is_positive_definite(const SparseMatrix& a);

}  // namespace alfem
