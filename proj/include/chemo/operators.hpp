#pragma once

#include <span>

#include "chemo/grid.hpp"

namespace chemo {

// Second-order central Laplacian with reflected ghost cells, so the
// discrete normal derivative vanishes at every boundary face and the sum
// of the output over cells telescopes to zero.
void laplacian_neumann(std::span<const double> f, const GridDomain& domain,
                       std::span<double> out);

// Conservative upwind form of -chi * div(u grad v): per interior face the
// gradient g = (v_R - v_L)/h defines the drift w = chi*g, the advected
// value of u is taken from the cell the flow leaves, and the output is
// minus the flux divergence. Boundary faces carry zero flux.
void chemotaxis_divergence(std::span<const double> u, std::span<const double> v,
                           const GridDomain& domain, double chi,
                           std::span<double> out);

// Midpoint quadrature of u over the domain (exact for cell-wise linear u).
double nonlocal_mass(std::span<const double> u, const GridDomain& domain);

// max over interior faces of |v_R - v_L| / h (zero on boundary faces).
double max_face_gradient(std::span<const double> v, const GridDomain& domain);

}  // namespace chemo
