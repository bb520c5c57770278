#include "solwave/fixed_point.hpp"

#include "solwave/bo_soliton.hpp"
#include "solwave/norms.hpp"
#include "solwave/operators.hpp"

#include <cmath>

namespace solwave {

void SolverOptions::validate() const {
    if (!(ball_factor_k > 0.0) || !(eta > 0.0) || !(fp_tolerance > 0.0) ||
        !(linear_solve_tolerance > 0.0))
        throw std::invalid_argument("SolverOptions: all tolerances and weights must be positive");
    if (max_iterations < 1) throw std::invalid_argument("SolverOptions: max_iterations >= 1");
}

SolitonSolution fixed_point_solve(double epsilon, const GridPtr& grid, const SolverOptions& opts) {
    opts.validate();
    if (epsilon < 0.0) throw std::invalid_argument("fixed_point_solve: epsilon must be nonnegative");

    SolitonSolution sol;
    sol.epsilon = epsilon;
    sol.epsilon_out_of_regime = epsilon > 0.5;

    const GridFunction rho = bo_soliton(grid);
    GridFunction v = GridFunction::zero(grid, Parity::Even);

    for (int it = 1; it <= opts.max_iterations; ++it) {
        const GridFunction rhs = -0.5 * (v * v) + g_tilde(v + rho, epsilon);
        // Warm start: solve for the correction from the current residual, so
        // the Krylov work shrinks with the outer gap.
        const GridFunction resid = rhs - apply_L(v, rho);
        const GridFunction delta =
            solve_L_even(project_parity(resid, Parity::Even), opts.linear_solve_tolerance);
        const GridFunction v_next = project_parity(v + delta, Parity::Even);

        const double gap = x_norm(v_next - v, opts.eta);
        sol.iterate_gaps.push_back(gap);
        v = v_next;
        sol.iterations = it;

        if (epsilon > 0.0 && x_norm(v, opts.eta) > opts.ball_factor_k * epsilon) {
            sol.status = SolveStatus::BallEscape;
            break;
        }
        if (gap < opts.fp_tolerance) {
            sol.status = SolveStatus::Converged;
            break;
        }
        if (it == opts.max_iterations) sol.status = SolveStatus::MaxIterations;
    }

    sol.v = v;
    sol.phi = project_parity(rho + v, Parity::Even);
    sol.x_norm_v = x_norm(v, opts.eta);
    if (sol.converged())
        sol.rescaled_residual_sup = rescaled_equation_defect(sol.phi, epsilon).sup_norm();
    return sol;
}

}  // namespace solwave
