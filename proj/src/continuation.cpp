#include "solwave/continuation.hpp"

#include "solwave/krylov.hpp"
#include "solwave/norms.hpp"
#include "solwave/operators.hpp"
#include "solwave/spectrum.hpp"

#include <cmath>
#include <limits>

namespace solwave {

std::string to_string(StopReason r) {
    switch (r) {
        case StopReason::ReachedTarget: return "reached_target";
        case StopReason::IntervalInfiniteCap: return "interval_infinite_cap";
        case StopReason::NormBlowup: return "norm_blowup";
        case StopReason::HeightMarginCollapse: return "height_margin_collapse";
        case StopReason::EigenvalueCollapse: return "eigenvalue_collapse";
        case StopReason::StepUnderflow: return "step_underflow";
    }
    return "unknown";
}

GridFunction continuation_nonlinearity(const PhysicalParams& p, const GridFunction& U1,
                                       const GridFunction& w) {
    require_same_grid(U1, w);
    const double g = p.g, g2 = p.gamma * p.gamma;
    const GridFunction w2 = w * w;
    const GridFunction dw = apply_modD(w);
    const GridFunction dw2 = apply_modD(w2);

    // Quadratic terms, with U1-dependent coefficients.
    GridFunction n2 = 0.5 * g2 * w2 + g * ((w * dw) + 0.5 * dw2);
    n2 = n2 + g2 * (-0.5 * (U1 * dw2) - (w * apply_modD(U1 * w)) +
                    0.5 * (w2 * apply_modD(U1)) + ((U1 * w) * dw) + 0.5 * apply_modD(U1 * w2));
    // Cubic terms.
    GridFunction n3 = 0.5 * g2 * (-1.0 * (w * dw2) + (w2 * dw) + (1.0 / 3.0) * apply_modD(w2 * w));
    // The step equation carries these moved to the right-hand side.
    return -1.0 * (n2 + n3);
}

namespace {

GridFunction step_forcing(const PhysicalParams& p1, double c2, const GridFunction& U1,
                          const GridFunction& w) {
    const double dc = c2 - p1.c;
    const GridFunction s = U1 + w;
    return -dc * (p1.gamma * s - (c2 + p1.c) * apply_modD(s)) +
           continuation_nonlinearity(p1, U1, w);
}

}  // namespace

PhysicalProfile continuation_step(const PhysicalProfile& U1, double c2,
                                  const ContinuationControls& controls) {
    const PhysicalParams& p1 = U1.params;
    PhysicalParams p2 = p1;
    p2.c = c2;
    if (!p1.sign_ok() || !p2.sign_ok())
        throw std::invalid_argument("continuation_step: sign condition g + c*gamma < 0 violated");
    {
        const Admissibility adm = admissibility_check(U1);
        if (adm.height_margin <= 0.0)
            throw std::invalid_argument("continuation_step: starting profile above maximal height");
    }

    const GridPtr grid = U1.U.grid;
    const SolverOptions& opts = controls.solver;
    const double a0 = p1.g + p1.c * p1.gamma;

    auto apply_lu = [&](const std::vector<double>& x) {
        GridFunction v = project_parity(GridFunction(grid, x), Parity::Even);
        return project_parity(apply_babenko_linearization(p1, U1.U, v), Parity::Even).values;
    };
    auto precond = [&](const std::vector<double>& r) {
        auto spec = grid->forward(r);
        const int nh = grid->size() / 2;
        for (int k = 0; k <= nh; ++k) spec[k] /= a0 - p1.c * p1.c * grid->wavenumber(k);
        return grid->inverse(spec);
    };

    GridFunction w = GridFunction::zero(grid, Parity::Even);
    bool converged = false;
    for (int it = 1; it <= opts.max_iterations; ++it) {
        const GridFunction rhs = step_forcing(p1, c2, U1.U, w);
        const GridFunction resid =
            project_parity(rhs - apply_babenko_linearization(p1, U1.U, w), Parity::Even);
        GmresResult res = gmres(apply_lu, precond, resid.values, opts.linear_solve_tolerance, 600);
        const GridFunction w_next =
            project_parity(w + GridFunction(grid, std::move(res.x)), Parity::Even);
        const double gap = x_norm(w_next - w, opts.eta);
        w = w_next;
        if (gap < opts.fp_tolerance) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw SolveFailure("continuation_step: fixed point did not converge at c2 = " +
                           std::to_string(c2));

    PhysicalProfile out;
    out.params = p2;
    out.U = project_parity(U1.U + w, Parity::Even);

    if (controls.newton_polish) {
        const GridFunction res2 = project_parity(babenko_operator(p2, out.U), Parity::Even);
        auto apply_lu2 = [&](const std::vector<double>& x) {
            GridFunction v = project_parity(GridFunction(grid, x), Parity::Even);
            return project_parity(apply_babenko_linearization(p2, out.U, v), Parity::Even).values;
        };
        GmresResult corr = gmres(apply_lu2, precond, (-1.0 * res2).values,
                                 opts.linear_solve_tolerance, 600);
        out.U = project_parity(out.U + GridFunction(grid, std::move(corr.x)), Parity::Even);
    }

    reconstruct_wq(out);
    babenko_residual(out);

    const Admissibility adm = admissibility_check(out);
    if (!adm.sign_ok || adm.height_margin <= 0.0)
        throw SolveFailure("continuation_step: admissibility lost at c2 = " + std::to_string(c2));
    return out;
}

namespace {

// Spectrum diagnostics on a centered crop of the working grid sized so the
// rescaled period stays a few hundred units; node subsets only.
double branch_lambda_min(const PhysicalProfile& profile) {
    const GridPtr grid = profile.U.grid;
    const auto& p = profile.params;
    const double scaled_period = grid->period() * std::abs(p.g + p.c * p.gamma) / (p.c * p.c);
    int crop = 0;
    while ((scaled_period / (1 << (crop + 1))) >= 350.0 && grid->size() / (1 << (crop + 1)) >= 2048)
        ++crop;
    PhysicalProfile sub;
    sub.params = p;
    sub.U = crop_centered(profile.U, crop);
    return smallest_even_eigenvalue(sub);
}

BranchPoint make_point(const PhysicalProfile& profile, double step_used, double lambda_min,
                       double eta) {
    BranchPoint pt;
    pt.c = profile.params.c;
    pt.epsilon = profile.params.epsilon();
    pt.sup_U = -std::numeric_limits<double>::infinity();
    for (double v : profile.U.values) pt.sup_U = std::max(pt.sup_U, v);
    pt.x_norm = x_norm(profile.U, eta);
    pt.babenko_residual_sup = profile.babenko_residual_sup;
    pt.lambda_min = lambda_min;
    pt.height_margin = profile.params.max_height() - pt.sup_U;
    pt.step_used = step_used;
    return pt;
}

}  // namespace

Branch trace_branch(const PhysicalProfile& start, double c_target,
                    const ContinuationControls& controls) {
    Branch branch;
    branch.g = start.params.g;
    branch.gamma = start.params.gamma;

    PhysicalProfile current = start;
    if (current.babenko_residual_sup == 0.0) babenko_residual(current);
    double step_used = 0.0;
    const double eta = controls.solver.eta;
    const double velocity_cap =
        controls.velocity_cap_factor * start.params.g / std::abs(start.params.gamma);
    const double direction = (c_target >= start.params.c) ? 1.0 : -1.0;
    double x_norm_start = x_norm(start.U, eta);

    while (true) {
        // Diagnostics at the accepted point.
        const Admissibility adm = admissibility_check(current);
        if (!adm.sign_ok || adm.height_margin <= 0.0) {
            branch.points.push_back(make_point(current, step_used, 0.0, eta));
            branch.stop_reason = StopReason::HeightMarginCollapse;
            return branch;
        }
        const double lambda_min = branch_lambda_min(current);
        BranchPoint pt = make_point(current, step_used, lambda_min, eta);
        branch.points.push_back(pt);

        if (std::abs(pt.c - c_target) < 1e-12) {
            branch.stop_reason = StopReason::ReachedTarget;
            return branch;
        }
        if (std::abs(pt.c) >= velocity_cap) {
            branch.stop_reason = StopReason::IntervalInfiniteCap;
            return branch;
        }
        if (pt.height_margin < controls.margin_floor_rel * current.params.max_height()) {
            branch.stop_reason = StopReason::HeightMarginCollapse;
            return branch;
        }
        const double edge = std::abs(current.params.g + current.params.c * current.params.gamma);
        if (std::abs(pt.lambda_min) < controls.lambda_floor_rel * edge) {
            branch.stop_reason = StopReason::EigenvalueCollapse;
            return branch;
        }
        if (pt.x_norm > controls.xnorm_blowup_factor * x_norm_start) {
            branch.stop_reason = StopReason::NormBlowup;
            return branch;
        }
        if (static_cast<int>(branch.points.size()) >= controls.max_points) {
            branch.stop_reason = StopReason::StepUnderflow;
            return branch;
        }

        // Adaptive step from the three controlling margins.
        double dc = controls.safety * std::min({pt.height_margin * controls.s1,
                                                std::abs(pt.lambda_min) * controls.s2,
                                                controls.s3 / std::max(pt.x_norm, 1e-12)});
        dc = std::min(dc, std::abs(c_target - pt.c));
        bool accepted = false;
        for (int attempt = 0; attempt <= controls.max_step_retries && !accepted; ++attempt) {
            if (dc < controls.min_step) break;
            const double c2 = pt.c + direction * dc;
            try {
                PhysicalProfile next = continuation_step(current, c2, controls);
                current = std::move(next);
                step_used = direction * dc;
                accepted = true;
            } catch (const std::exception&) {
                dc *= 0.5;
            }
        }
        if (!accepted) {
            branch.stop_reason = StopReason::StepUnderflow;
            return branch;
        }
    }
}

}  // namespace solwave
