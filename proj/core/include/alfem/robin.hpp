#pragma once

#include <limits>
#include <vector>

#include "alfem/assembly.hpp"

namespace alfem {

inline constexpr double kInfiniteCompliance = std::numeric_limits<double>::infinity();

/// Per-facet coefficients of the tempered augmentation, evaluated without
/// cancellation. kappa = +inf is the pure-flux limit.
struct CouplingCoefficients {
  double S = 0.0;               ///< (κ + h/γ_κ)⁻¹
  double one_minus_kappa_S = 0.0;
  double kappa_S = 0.0;
  double kappa_one_minus_kappa_S = 0.0;
};

CouplingCoefficients coupling_coefficients(double kappa, double gamma_kappa, double h);

/// Boundary condition ε∂ₙu = κ⁻¹(u₀ - u) + g on the Robin sides; the remaining
/// sides carry strong Dirichlet values.
struct RobinParameters {
  double eps = 1.0;
  double kappa = 1.0;  ///< >= 0; kInfiniteCompliance for the flux limit
  double gamma_kappa = 10.0;
  ScalarFunction u0;
  FluxFunction g;  ///< flux datum, may depend on the outward normal
  Source f;
  std::vector<BoundaryTag> robin_tags{kAllSides.begin(), kAllSides.end()};
  ScalarFunction dirichlet_value;  ///< used on non-Robin sides; defaults to u0
  double stab_weight = 1e-2;       ///< multiplier jump stabilization
};

/// a(u,v) + κ⁻¹⟨u,v⟩ = (f,v) + ⟨κ⁻¹u₀ + g, v⟩. Throws InvalidArgument for κ = 0.
SparseSystem assemble_robin_classic(const Mesh& mesh, const RobinParameters& p);

/// Nitsche form with weight S_h; κ = 0 gives the Dirichlet Nitsche method.
SparseSystem assemble_robin_nitsche(const Mesh& mesh, const RobinParameters& p);

/// Saddle system with a P0 multiplier per Robin facet (λ ≈ ε∂ₙu), ordered as
/// `robin_facets`, stabilized by jumps between neighbouring facets of one side.
SparseSystem assemble_robin_multiplier(const Mesh& mesh, const RobinParameters& p);

std::vector<int> robin_facets(const Mesh& mesh, const RobinParameters& p);

/// Nitsche's method for u = g on the whole boundary with penalty γ₀/h_F.
SparseSystem assemble_dirichlet_nitsche(const Mesh& mesh, double eps, double gamma0,
                                        const Source& f, const ScalarFunction& g);

}  // namespace alfem
