#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <optional>
#include <span>
#include <vector>

namespace alfem {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Vector = Eigen::VectorXd;

/// Split of a saddle system into primal and multiplier blocks.
struct BlockStructure {
  int n_primal = 0;
  int n_multiplier = 0;
};

/// Symmetric linear system with optional block split and strongly imposed
/// values. Constrained unknowns are eliminated by `reduce` before solving.
struct SparseSystem {
  SparseMatrix matrix;
  Vector rhs;
  std::optional<BlockStructure> blocks;
  std::vector<int> dirichlet_dofs;    ///< ascending, unique
  std::vector<double> dirichlet_values;

  int size() const { return static_cast<int>(matrix.rows()); }
};

/// Collects element contributions in call order; duplicates are summed in
/// insertion order, so identical call sequences give bitwise identical matrices.
class TripletAccumulator {
 public:
  void add(int i, int j, double v) { triplets_.emplace_back(i, j, v); }
  void add_block(std::span<const int> rows, std::span<const int> cols,
                 const Eigen::Ref<const Eigen::MatrixXd>& block);
  void add_symmetric(std::span<const int> dofs, const Eigen::Ref<const Eigen::MatrixXd>& block) {
    add_block(dofs, dofs, block);
  }
  /// Appends all entries of `m` shifted by (row_offset, col_offset).
  void add_matrix(const SparseMatrix& m, int row_offset = 0, int col_offset = 0);
  SparseMatrix build(int rows, int cols) const;
  SparseMatrix build(int n) const { return build(n, n); }

 private:
  std::vector<Eigen::Triplet<double>> triplets_;
};

/// max|A - Aᵀ| / max|A| (0 for the zero matrix).
double symmetry_defect(const SparseMatrix& a);

/// Largest absolute entry.
double max_abs(const SparseMatrix& a);

/// max|A - B| / max(max|A|, max|B|).
double relative_difference(const SparseMatrix& a, const SparseMatrix& b);

/// Sets strongly imposed values; `dofs` need not be sorted, the first value wins for duplicates.
void set_dirichlet(SparseSystem& system, std::vector<int> dofs, std::vector<double> values);

/// Free-unknown view of a system after symmetric elimination of constraints.
struct ReducedSystem {
  SparseMatrix matrix;
  Vector rhs;
  std::vector<int> free_dofs;  ///< reduced index -> full index

  Vector expand(const Vector& reduced, const SparseSystem& full) const;
};

ReducedSystem reduce(const SparseSystem& system);

}  // namespace alfem
