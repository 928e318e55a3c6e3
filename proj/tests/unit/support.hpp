#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "alfem/interface.hpp"
#include "alfem/layout.hpp"
#include "alfem/manufactured.hpp"
#include "alfem/mesh.hpp"

namespace alfem::testing {

inline FittedInterface half_split(int n) {
  return fit_interface_line(build_structured_mesh(n), 0.5);
}

/// Source, outer values and outer fluxes taken from a piecewise exact solution.
inline InterfaceData two_field_data(double eps1, double eps2, const ExactSolution& e1,
                                    const ExactSolution& e2) {
  InterfaceData d;
  d.eps1 = eps1;
  d.eps2 = eps2;
  d.f = {e1.source(eps1), e2.source(eps2)};
  d.outer.value = {e1.u, e2.u};
  d.outer.flux = {e1.flux(eps1), e2.flux(eps2)};
  return d;
}

/// Max nodal error of every layout unknown against exact[field - 1].
inline double layout_nodal_error(const TwoFieldLayout& layout, const Vector& u,
                                 const std::array<ExactSolution, 2>& exact) {
  double e = 0.0;
  for (int k = 0; k < layout.num_dofs(); ++k) {
    const Point& x = layout.mesh().vertices()[layout.dof_vertex(k)];
    e = std::max(e, std::abs(u[k] - exact[layout.dof_field(k) - 1].u(x)));
  }
  return e;
}

}  // namespace alfem::testing
