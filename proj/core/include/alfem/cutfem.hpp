#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "alfem/condition.hpp"
#include "alfem/cut.hpp"
#include "alfem/interface.hpp"
#include "alfem/layout.hpp"
#include "alfem/manufactured.hpp"

namespace alfem {

struct GhostPenaltyConfig {
  double gamma_g = 0.1;
};

/// g_h(u,v) = Σ_F γ_g h_F ∫_F ⟦∂_{n_F}u⟧⟦∂_{n_F}v⟧ over `faces`, on the nodal
/// P1 space of the whole mesh.
SparseSystem assemble_ghost_penalty(const Mesh& mesh, std::span<const int> faces, double gamma_g);

/// Same over the ghost faces of a classification.
SparseSystem assemble_ghost_penalty(const Mesh& mesh, const CutClassification& cls,
                                    const GhostPenaltyConfig& cfg);

/// g_h(i_h u, i_h u) for the nodal interpolant of `exact`.
double ghost_penalty_energy(const Mesh& mesh, const CutClassification& cls,
                            const GhostPenaltyConfig& cfg, const ExactSolution& exact);

/// A cut assembly together with the unknown layout it refers to.
struct CutProblem {
  TwoFieldLayout layout;
  SparseSystem system;
};

struct CutPoissonData {
  double eps = 1.0;
  double gamma0 = 100.0;
  Source f;
  ScalarFunction g;  ///< Dirichlet datum on Γ and on the clipped outer boundary
};

/// Poisson on {φ < 0} ∩ (0,1)²: Nitsche on Γ (γ₀/h_K) and on the outer boundary
/// (γ₀/h_F), plus ghost penalty. Unknowns live on elements meeting {φ < 0}.
CutProblem assemble_cut_poisson(const Mesh& mesh, const CutClassification& cls,
                                const CutPoissonData& d, const GhostPenaltyConfig& cfg);

/// Interface Nitsche coupling on the cut layout, with ghost penalty on each
/// field scaled by its ε.
CutProblem assemble_cut_interface(const Mesh& mesh, const CutClassification& cls,
                                  const InterfaceData& d, const WeightScheme& w,
                                  const GhostPenaltyConfig& cfg);

/// Multiplier method with λ ≈ {∂ₙu}: coupling and j scaled by ω(ε), γ = γ₀ω(ε)/h,
/// arithmetic averages, P0 multiplier per interface segment.
CutProblem assemble_cut_multiplier_robust(const Mesh& mesh, const CutClassification& cls,
                                          const InterfaceData& d, const GhostPenaltyConfig& cfg);

/// Adds γ_g scale h_F |F| ⟦∂ₙφ⟧⟦∂ₙφ⟧ over the layout's ghost faces of `field`.
void add_ghost_penalty(const TwoFieldLayout& layout, int field, double gamma_g, double scale,
                       TripletAccumulator& acc);

/// Conditioning and accuracy of cut Poisson over cut positions x = 1/2 + δ.
struct CutStudyReport {
  std::vector<double> offsets;
  std::vector<double> kappa2_with;
  std::vector<double> kappa2_without;
  std::vector<double> errors;  ///< energy error with ghost penalty
  std::vector<int> levels;
  std::vector<double> gh_consistency;  ///< g_h(i_h u, i_h u) per level
};

struct CutStudyOptions {
  int n = 16;
  std::vector<double> offsets{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
  double gamma_g = 0.1;
  double gamma0 = 100.0;
  std::vector<int> levels{8, 16, 32, 64};
  ConditionOptions condition;
};

CutStudyReport run_cut_study(const CutStudyOptions& options);

/// CSV with columns offset,kappa2_with,kappa2_without,energy_error.
void write_cut_study_csv(std::ostream& os, const CutStudyReport& report);

}  // namespace alfem
