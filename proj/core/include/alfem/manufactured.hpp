#pragma once

#include "alfem/assembly.hpp"

namespace alfem {

/// Closed-form solution with its gradient and Laplacian.
struct ExactSolution {
  ScalarFunction u;
  GradientFunction grad;
  ScalarFunction laplacian;

  /// f = -eps Δu.
  Source source(double eps = 1.0) const;
  /// eps ∇u·n.
  FluxFunction flux(double eps = 1.0) const;
  ExactSolution scaled(double factor) const;
};

/// sin(πx) sin(πy).
ExactSolution sine_product();
/// c + a x + b y.
ExactSolution linear(double c, double a, double b);
/// 1 - |x - center|² / r², vanishing on the circle of radius r.
ExactSolution radial_bubble(const Point& center, double r);
/// sin(2πx) sin(πy): vanishes on x = 1/2 and on the boundary of the unit square.
ExactSolution sine_product_2x();

/// Source of the adhesion example: 1 for y <= 1/2, -7/2 above, with the jump declared.
Source step_source();

}  // namespace alfem
