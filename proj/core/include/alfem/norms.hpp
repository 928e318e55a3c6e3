#pragma once

#include <array>

#include "alfem/layout.hpp"
#include "alfem/manufactured.hpp"

namespace alfem {

struct ErrorNorms {
  double l2 = 0.0;      ///< ‖u - u_h‖
  double h1 = 0.0;      ///< broken ‖∇(u - u_h)‖
  double energy = 0.0;  ///< broken ‖ε^{1/2} ∇(u - u_h)‖
};

/// Errors of a nodal P1 field on the whole mesh (degree-5 quadrature).
ErrorNorms p1_errors(const Mesh& mesh, const Vector& u, const ExactSolution& exact, double eps = 1.0);

/// Errors of a layout field over its physical pieces, field i against exact[i-1].
ErrorNorms layout_errors(const TwoFieldLayout& layout, const Vector& u,
                         const std::array<ExactSolution, 2>& exact,
                         const std::array<double, 2>& eps = {1.0, 1.0});

/// log2(coarse / fine); the observed order when h halves.
double observed_order(double coarse, double fine);

}  // namespace alfem
