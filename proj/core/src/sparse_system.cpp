#include "alfem/sparse_system.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "alfem/error.hpp"

namespace alfem {

void TripletAccumulator::add_block(std::span<const int> rows, std::span<const int> cols,
                                   const Eigen::Ref<const Eigen::MatrixXd>& block) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] < 0) continue;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j] < 0) continue;
      triplets_.emplace_back(rows[i], cols[j], block(static_cast<Eigen::Index>(i),
                                                     static_cast<Eigen::Index>(j)));
    }
  }
}

void TripletAccumulator::add_matrix(const SparseMatrix& m, int row_offset, int col_offset) {
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it)
      triplets_.emplace_back(static_cast<int>(it.row()) + row_offset,
                             static_cast<int>(it.col()) + col_offset, it.value());
}

SparseMatrix TripletAccumulator::build(int rows, int cols) const {
  SparseMatrix m(rows, cols);
  m.setFromTriplets(triplets_.begin(), triplets_.end());
  m.makeCompressed();
  return m;
}

double max_abs(const SparseMatrix& a) {
  double m = 0.0;
  for (int k = 0; k < a.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) m = std::max(m, std::abs(it.value()));
  return m;
}

double symmetry_defect(const SparseMatrix& a) {
  const double scale = max_abs(a);
  if (scale == 0.0) return 0.0;
  const SparseMatrix at = a.transpose();
  return max_abs(SparseMatrix(a - at)) / scale;
}

double relative_difference(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidArgument("matrix dimensions differ");
  const double scale = std::max(max_abs(a), max_abs(b));
  if (scale == 0.0) return 0.0;
  return max_abs(SparseMatrix(a - b)) / scale;
}

void set_dirichlet(SparseSystem& system, std::vector<int> dofs, std::vector<double> values) {
  if (dofs.size() != values.size()) throw InvalidArgument("dirichlet dofs/values size mismatch");
  std::vector<std::size_t> order(dofs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dofs[a] < dofs[b]; });
  system.dirichlet_dofs.clear();
  system.dirichlet_values.clear();
  for (std::size_t k : order) {
    if (dofs[k] < 0 || dofs[k] >= system.size()) throw InvalidArgument("dirichlet dof out of range");
    if (!system.dirichlet_dofs.empty() && system.dirichlet_dofs.back() == dofs[k]) continue;
    system.dirichlet_dofs.push_back(dofs[k]);
    system.dirichlet_values.push_back(values[k]);
  }
}

ReducedSystem reduce(const SparseSystem& system) {
  const int n = system.size();
  if (system.rhs.size() != n) throw InvalidArgument("rhs length differs from matrix dimension");
  ReducedSystem r;
  std::vector<int> map(n, -1);
  Vector fixed = Vector::Zero(n);
  std::vector<char> constrained(n, 0);
  for (std::size_t k = 0; k < system.dirichlet_dofs.size(); ++k) {
    constrained[system.dirichlet_dofs[k]] = 1;
    fixed[system.dirichlet_dofs[k]] = system.dirichlet_values[k];
  }
  for (int i = 0; i < n; ++i)
    if (!constrained[i]) {
      map[i] = static_cast<int>(r.free_dofs.size());
      r.free_dofs.push_back(i);
    }
  const int m = static_cast<int>(r.free_dofs.size());
  const Vector lifted = system.matrix * fixed;
  r.rhs.resize(m);
  for (int k = 0; k < m; ++k) r.rhs[k] = system.rhs[r.free_dofs[k]] - lifted[r.free_dofs[k]];

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(system.matrix.nonZeros()));
  for (int c = 0; c < system.matrix.outerSize(); ++c) {
    if (map[c] < 0) continue;
    for (SparseMatrix::InnerIterator it(system.matrix, c); it; ++it) {
      const int row = map[it.row()];
      if (row >= 0) trip.emplace_back(row, map[c], it.value());
    }
  }
  r.matrix.resize(m, m);
  r.matrix.setFromTriplets(trip.begin(), trip.end());
  r.matrix.makeCompressed();
  return r;
}

Vector ReducedSystem::expand(const Vector& reduced, const SparseSystem& full) const {
  Vector x = Vector::Zero(full.size());
  for (std::size_t k = 0; k < full.dirichlet_dofs.size(); ++k)
    x[full.dirichlet_dofs[k]] = full.dirichlet_values[k];
  for (std::size_t k = 0; k < free_dofs.size(); ++k) x[free_dofs[k]] = reduced[static_cast<int>(k)];
  return x;
}

}  // namespace alfem
