#pragma once

#include <cstdint>

#include "alfem/sparse_system.hpp"

namespace alfem {

struct ConditionEstimate {
  double lambda_max = 0.0;      ///< largest |eigenvalue|, power iteration
  double lambda_min_abs = 0.0;  ///< smallest |eigenvalue|, inverse iteration
  double kappa2 = 1.0;
};

struct ConditionOptions {
  int iterations = 400;
  double tolerance = 1e-10;  ///< relative change that stops either iteration early
  std::uint32_t seed = 12345;
};

/// Spectral condition estimate of a symmetric matrix.
ConditionEstimate estimate_condition(const SparseMatrix& a, const ConditionOptions& options = {});

/// Estimate on the constraint-reduced matrix.
ConditionEstimate estimate_condition(const SparseSystem& system,
                                     const ConditionOptions& options = {});

}  // namespace alfem
