#pragma once

#include "solwave/grid.hpp"

namespace solwave {

/// The explicit soliton rho(alpha) = 4/(1+alpha^2), sampled at the nodes.
GridFunction bo_soliton(const GridPtr& grid);

/// d(rho)/d(alpha) in closed form, -8*alpha/(1+alpha^2)^2.
GridFunction bo_soliton_derivative(const GridPtr& grid);

/// Pointwise defect of -rho - |D|rho + rho^2/2 for f = rho sampled on the
/// grid. Its sup norm is the operational "truncation floor" of the grid:
/// the identity is exact on the line, so everything left is domain
/// truncation plus rounding.
GridFunction soliton_identity_defect(const GridPtr& grid);

/// Sup norm of the above; recomputed per grid, never hard-coded.
double truncation_floor(const GridPtr& grid);

/// The perturbative right-hand side of the rescaled profile equation,
///   eps/(1+eps)^2   * ( -phi |D|phi - 1/2 |D|phi^2 )
/// + eps^2/(1+eps)^2 * ( 1/2 phi |D|phi^2 - 1/2 phi^2 |D|phi - 1/6 |D|phi^3 ).
GridFunction g_tilde(const GridFunction& phi, double epsilon);

/// L w = -w - |D|w + rho*w, the linearization of the soliton equation.
/// rho_fn must be bo_soliton on the same grid (passed in so repeated
/// applications share one sampling).
GridFunction apply_L(const GridFunction& w, const GridFunction& rho_fn);
GridFunction apply_L(const GridFunction& w);

/// Solve L w = f on the even subspace to the requested relative residual.
/// Preconditioned GMRES with the exact multiplier inverse of -(1+|D|);
/// every operator application is projected onto even functions so the odd
/// kernel direction rho' never enters.
GridFunction solve_L_even(const GridFunction& f, double rel_tolerance = 1e-12,
                          int max_iterations = 400);

/// Pointwise defect of the full rescaled equation
///   -phi - |D|phi + 1/2 phi^2 - g_tilde_eps(phi)
/// evaluated directly from phi; independent of any solve path.
GridFunction rescaled_equation_defect(const GridFunction& phi, double epsilon);

}  // namespace solwave
