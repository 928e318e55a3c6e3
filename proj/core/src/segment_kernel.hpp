#pragma once

// Shared interface and boundary kernels of the two-field formulations.

#include <Eigen/Core>
#include <array>
#include <vector>

#include "alfem/interface.hpp"
#include "alfem/quadrature.hpp"

namespace alfem::detail {

using Vector6 = Eigen::Matrix<double, 6, 1>;
using Matrix6 = Eigen::Matrix<double, 6, 6>;

/// Values of jump, weighted flux average and conjugate average of the six
/// local basis functions (three per field) on one interface segment.
struct SegmentKernel {
  std::array<int, 6> dofs{};
  Vector6 flux = Vector6::Zero();  ///< ⟨⟨ε∇φ·n⟩⟩, constant on the segment
  QuadratureRule rule;
  std::vector<Vector6> jump;       ///< ⟦φ⟧ at each quadrature point
  std::vector<Vector6> conjugate;  ///< ⟨⟨φ⟩⟩* at each quadrature point
  ResolvedWeights weights;
  double gamma = 0.0;  ///< γ₀ · scale / h
};

SegmentKernel segment_kernel(const TwoFieldLayout& layout, const InterfaceSegment& s,
                             const InterfaceData& d, const WeightScheme& w);

/// Broken stiffness and volume load over the layout pieces.
void add_bulk(const TwoFieldLayout& layout, const InterfaceData& d, TripletAccumulator& acc,
              Vector& rhs);

/// Neumann loads on free sides; returns the strong constraints of the Dirichlet sides.
void add_outer_boundary(const TwoFieldLayout& layout, const OuterBoundary& outer,
                        const std::array<double, 2>& eps, Vector& rhs, std::vector<int>& dofs,
                        std::vector<double>& values);

/// ⟨g, ⟨⟨v⟩⟩*⟩ for every segment.
void add_flux_jump_load(const TwoFieldLayout& layout, const InterfaceData& d,
                        const WeightScheme& w, Vector& rhs);

bool is_dirichlet(const OuterBoundary& outer, BoundaryTag tag);

/// Multiplier saddle system with the multiplier coupling and j scaled by `multiplier_scale`.
SparseSystem assemble_multiplier(const TwoFieldLayout& layout, const InterfaceData& d,
                                 bool stabilize, const WeightScheme& w, double multiplier_scale);

}  // namespace alfem::detail
