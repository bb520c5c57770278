#pragma once

#include "solwave/grid.hpp"

#include <vector>

namespace solwave {

struct SolverOptions {
    double ball_factor_k = 2000.0;      // fixed-point ball radius delta = k * eps
    double eta = 0.1;                   // X-norm weight
    double fp_tolerance = 1e-11;        // X-norm iterate gap for convergence
    int max_iterations = 500;
    double linear_solve_tolerance = 1e-12;

    void validate() const;
};

enum class SolveStatus { Converged, BallEscape, MaxIterations };

/// Converged rescaled profile phi = rho + v together with the iteration
/// record. rescaled_residual_sup is evaluated from the returned phi by an
/// independent pass through the equation, not from solver internals.
struct SolitonSolution {
    double epsilon = 0.0;
    GridFunction phi;
    GridFunction v;
    int iterations = 0;
    std::vector<double> iterate_gaps;
    double rescaled_residual_sup = 0.0;
    double x_norm_v = 0.0;
    SolveStatus status = SolveStatus::Converged;
    bool epsilon_out_of_regime = false;  // eps above the soft cap 0.5

    bool converged() const { return status == SolveStatus::Converged; }
};

/// Picard iteration v <- L^{-1}( -v^2/2 + g_tilde(v + rho) ) from v = 0 on
/// the even subspace, stopping when the X-norm gap drops below
/// opts.fp_tolerance. An iterate leaving the ball ||v||_X > k*eps is
/// reported as BallEscape rather than clamped.
SolitonSolution fixed_point_solve(double epsilon, const GridPtr& grid, const SolverOptions& opts = {});

}  // namespace solwave
