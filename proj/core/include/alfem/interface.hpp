#pragma once

#include <array>
#include <optional>
#include <vector>

#include "alfem/assembly.hpp"
#include "alfem/layout.hpp"

namespace alfem {

enum class WeightMode { arithmetic, harmonic, geometric };

/// Choice of the weights in ⟨⟨·⟩⟩ and of the scale of the interface penalty.
struct WeightScheme {
  WeightMode mode = WeightMode::harmonic;
  /// Factor in γ = γ₀ · scale / h. Defaults: ω(ε) for harmonic, max(ε₁, ε₂) otherwise.
  std::optional<double> penalty_scale;

  static WeightScheme arithmetic() { return {WeightMode::arithmetic, std::nullopt}; }
  static WeightScheme harmonic() { return {WeightMode::harmonic, std::nullopt}; }
  static WeightScheme geometric(std::optional<double> scale = std::nullopt) {
    return {WeightMode::geometric, scale};
  }
};

/// ω(ε) = 2ε₁ε₂ / (ε₁ + ε₂).
double harmonic_omega(double eps1, double eps2);

/// Weights for one interface segment. w1 + w2 = 1.
struct ResolvedWeights {
  double w1 = 0.5;
  double w2 = 0.5;
  double omega = 1.0;
  double penalty_scale = 1.0;
};

/// `fractions` are |K∩Ω_i|/|K| (only used by the geometric mode on cut segments).
ResolvedWeights resolve_weights(const WeightScheme& scheme, double eps1, double eps2,
                                const std::array<double, 2>& fractions = {0.5, 0.5},
                                bool cut = false);

struct JumpAverage {
  double jump = 0.0;       ///< u₁ - u₂
  double average = 0.0;    ///< w₁u₁ + w₂u₂
  double conjugate = 0.0;  ///< w₂u₁ + w₁u₂
};

JumpAverage jump_and_average(double u1, double u2, const ResolvedWeights& w);
/// Same, checking that `facet` belongs to the interface (InvalidArgument otherwise).
JumpAverage jump_and_average(const InterfaceTopology& topo, int facet, double u1, double u2,
                             const ResolvedWeights& w);

/// Conditions on ∂Ω for two-field problems: strong values on `dirichlet` sides,
/// prescribed flux ε∂ₙu on the others. Null functions mean zero data.
struct OuterBoundary {
  std::vector<BoundaryTag> dirichlet{kAllSides.begin(), kAllSides.end()};
  std::array<ScalarFunction, 2> value;
  std::array<FluxFunction, 2> flux;
};

struct InterfaceData {
  double eps1 = 1.0;
  double eps2 = 1.0;
  double gamma0 = 100.0;
  double stab_weight = 1e-2;
  std::array<Source, 2> f;  ///< per subdomain field
  ScalarFunction g;         ///< ⟦ε∂ₙu⟧ on Γ
  OuterBoundary outer;

  void set_source(const Source& s) { f = {s, s}; }
  std::array<double, 2> eps() const { return {eps1, eps2}; }
};

/// a(u,v) - ⟨⟨⟨ε∂ₙu⟩⟩,⟦v⟧⟩ - ⟨⟦u⟧,⟨⟨ε∂ₙv⟩⟩⟩ + ⟨γ⟦u⟧,⟦v⟧⟩ = (f,v) + ⟨g,⟨⟨v⟩⟩*⟩.
SparseSystem assemble_nitsche_interface(const TwoFieldLayout& layout, const InterfaceData& d,
                                        const WeightScheme& w);

/// Saddle system with a P0 multiplier per interface segment (λ ≈ -⟨⟨ε∂ₙu⟩⟩):
/// a(u,v) + ⟨λ + γ⟦u⟧,⟦v⟧⟩ = (f,v) + ⟨g,⟨⟨v⟩⟩*⟩,  ⟨⟦u⟧,μ⟩ - j(λ,μ) = 0.
/// Multiplier k belongs to layout.interface()[k].
SparseSystem assemble_multiplier_interface(const TwoFieldLayout& layout, const InterfaceData& d,
                                           bool stabilize,
                                           const WeightScheme& w = WeightScheme::harmonic());

/// j(λ,μ) = Σ_v h_v² ⟦λ⟧_v ⟦μ⟧_v over points shared by two segments, h_v the
/// mean penalty length of the two segments. Unscaled (weight 1).
SparseMatrix multiplier_jump_stabilization(const TwoFieldLayout& layout);

/// Building blocks of the interface forms, for identities and diagnostics.
struct InterfaceOperators {
  SparseMatrix stiffness;  ///< broken a(·,·)
  SparseMatrix penalty;    ///< ⟨γ⟦u⟧,⟦v⟧⟩
  SparseMatrix jump;       ///< B: row k = ∫ ⟦φ⟧ over segment k
  SparseMatrix flux;       ///< T: row k = -⟨⟨ε∂ₙφ⟩⟩ on segment k
};

InterfaceOperators assemble_interface_operators(const TwoFieldLayout& layout,
                                                const InterfaceData& d, const WeightScheme& w);

/// Jump and weighted flux of a discrete field at a point of segment s.
JumpAverage segment_jump(const TwoFieldLayout& layout, const Vector& u, int s, const Point& x);
double segment_flux_average(const TwoFieldLayout& layout, const Vector& u, int s,
                            const InterfaceData& d, const WeightScheme& w);

}  // namespace alfem
