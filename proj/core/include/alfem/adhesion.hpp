#pragma once

#include <string>
#include <vector>

#include "alfem/interface.hpp"
#include "alfem/newton.hpp"
#include "alfem/robin.hpp"

namespace alfem {

struct AdhesionParameters {
  double kappa = 0.5;          ///< bond compliance; kInfiniteCompliance disables the bond
  double gamma_kappa = 100.0;  ///< γ_κ
};

/// Per-facet derived quantities.
struct AdhesionCoefficients {
  double S = 0.0;       ///< (h/γ_κ + κ)⁻¹
  double gamma1 = 0.0;  ///< κ + h/γ_κ
  double gamma = 0.0;   ///< γ_κ/h + 1/κ (contact penalty)
};

AdhesionCoefficients adhesion_coefficients(const AdhesionParameters& p, double h);

/// a(u,v) + κ⁻¹⟨⟦u⟧,⟦v⟧⟩. Throws InvalidArgument for κ = 0.
SparseSystem assemble_stiff_penalty(const TwoFieldLayout& layout, const InterfaceData& d,
                                    double kappa);

/// Nitsche form of the cohesive law ⟦u⟧ = -κ⟨⟨ε∂ₙu⟩⟩ with weight S_h.
SparseSystem assemble_cohesive(const TwoFieldLayout& layout, const InterfaceData& d,
                               const AdhesionParameters& p, const WeightScheme& w);

/// One interface (or contact boundary) quadrature point of a contact solution.
struct ContactPoint {
  Point x = Point::Zero();
  int segment = -1;
  double gap = 0.0;         ///< ⟦u⟧ (adhesion) or u - g (boundary contact)
  double flux = 0.0;        ///< ⟨⟨ε∂ₙu⟩⟩ or ε∂ₙu
  double multiplier = 0.0;  ///< reconstructed λ
  bool active = false;      ///< [·]₊ branch active
};

struct ContactState {
  std::vector<ContactPoint> points;
  std::vector<char> active_faces;  ///< per point, the same as points[i].active
};

struct KktReport {
  double constraint = 0.0;       ///< max(gap, 0)
  double multiplier_sign = 0.0;  ///< max(λ, 0)
  double complementarity = 0.0;  ///< max |λ gap|
  Point constraint_at = Point::Zero();
  Point multiplier_sign_at = Point::Zero();
  Point complementarity_at = Point::Zero();
  bool constraint_ok = true;
  bool multiplier_sign_ok = true;
  bool complementarity_ok = true;

  bool passed() const { return constraint_ok && multiplier_sign_ok && complementarity_ok; }
};

KktReport verify_kkt(const ContactState& state, double tol);

struct ContactSolution {
  Vector u;
  ContactState state;
  NewtonReport report;
};

/// Adhesive contact: cohesive bond plus non-penetration ⟦u⟧ <= 0, solved by
/// semismooth Newton from the full-contact solution. The multiplier is
/// λ = ⟨⟨ε∂ₙu⟩⟩ + κ⁻¹⟦u⟧. Requires κ > 0.
ContactSolution solve_adhesive_contact(const TwoFieldLayout& layout, const InterfaceData& d,
                                       const AdhesionParameters& p, const WeightScheme& w,
                                       const NewtonOptions& options = {});

/// Linear limits of the adhesive contact form: every point in contact
/// (Nitsche coupling with penalty γ_κ/h) or none (cohesive law).
SparseSystem assemble_adhesive_limit(const TwoFieldLayout& layout, const InterfaceData& d,
                                     const AdhesionParameters& p, const WeightScheme& w,
                                     bool contact);

/// Unilateral condition u <= g on the contact sides, strong values elsewhere.
struct BoundaryContactData {
  double eps = 1.0;
  double gamma0 = 100.0;
  ScalarFunction g;  ///< obstacle
  Source f;
  std::vector<BoundaryTag> contact_tags{BoundaryTag::top};
  ScalarFunction dirichlet_value;  ///< on the other sides; zero if null
};

/// Nonlinear Nitsche contact with γ = γ₀/h. λ_h = -γ[u - g - γ⁻¹ε∂ₙu]₊.
/// Throws SingularSystem (suggesting a larger γ₀) if a linearization is singular.
ContactSolution solve_boundary_contact(const Mesh& mesh, const BoundaryContactData& d,
                                       const NewtonOptions& options = {});

/// Linear limits: contact everywhere (Nitsche for u = g) or nowhere.
SparseSystem assemble_boundary_contact_limit(const Mesh& mesh, const BoundaryContactData& d,
                                             bool contact);

}  // namespace alfem
