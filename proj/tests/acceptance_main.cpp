// Acceptance suite. Each criterion prints one line per clause and a summary
// line; the process exits nonzero if any executed criterion fails. Run a
// single criterion with --criterion N.

#include "solwave/bo_soliton.hpp"
#include "solwave/continuation.hpp"
#include "solwave/expansion.hpp"
#include "solwave/fixed_point.hpp"
#include "solwave/io.hpp"
#include "solwave/norms.hpp"
#include "solwave/operators.hpp"
#include "solwave/physical.hpp"
#include "solwave/rho_algebra.hpp"
#include "solwave/spectrum.hpp"
#include "solwave/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#define REQUIRE_OR_DIE(cond)                                          \
    do {                                                              \
        if (!(cond)) {                                                \
            std::fprintf(stderr, "fatal: %s failed\n", #cond);        \
            std::exit(1);                                             \
        }                                                             \
    } while (0)

using namespace solwave;

namespace {

struct Clause {
    bool pass;
    std::string text;
};

std::vector<Clause> g_clauses;

void clause(bool pass, const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    g_clauses.push_back({pass, buf});
    std::printf("  [%s] %s\n", pass ? "PASS" : "FAIL", buf);
}

bool flush_criterion(int id, const char* title, double seconds) {
    bool all = true;
    for (const auto& c : g_clauses) all = all && c.pass;
    std::printf("[%s] criterion %d: %s (%.1f s)\n", all ? "PASS" : "FAIL", id, title, seconds);
    g_clauses.clear();
    return all;
}

class Timer {
  public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

double window_sup_weighted(const GridFunction& f, double lo, double hi, int weight_power) {
    double s = 0.0;
    for (int m = 0; m < f.size(); ++m) {
        const double a = std::abs(f.grid->node(m));
        if (a < lo || a > hi) continue;
        double w = 1.0;
        for (int p = 0; p < weight_power; ++p) w *= a;
        s = std::max(s, w * std::abs(f.values[m]));
    }
    return s;
}

// --- criterion 1: soliton identity and refinement --------------------------

bool criterion_1() {
    Timer t;
    const double floor_coarse = truncation_floor(make_grid(400.0, 8192));
    const double floor_fine = truncation_floor(make_grid(800.0, 16384));
    clause(floor_coarse <= 1e-3, "soliton defect at (400, 8192): %.3e <= 1e-3", floor_coarse);
    const double ratio = floor_coarse / floor_fine;
    clause(ratio >= 1.5, "defect refinement ratio: %.2f >= 1.5 (fine %.3e)", ratio, floor_fine);
    return flush_criterion(1, "soliton identity", t.seconds());
}

// --- criterion 2: algebraic closure ----------------------------------------

bool criterion_2() {
    Timer t;
    {
        const RhoPolynomial p1 = modD_rho_power_coeffs(1);
        const bool exact = p1.coeffs.size() == 2 && p1.coeff(1) == Rational(-1) &&
                           p1.coeff(2) == Rational(1, 2);
        clause(exact, "k = 1 coefficients are exactly {-1, 1/2}");
    }
    const GridPtr grid = make_grid(6400.0, 131072);
    const GridFunction rho = bo_soliton(grid);
    GridFunction rk = rho;
    for (int k = 1; k <= 5; ++k) {
        if (k > 1) rk = rk * rho;
        const GridFunction lhs = apply_modD(rk);
        const GridFunction rhs = modD_rho_power_coeffs(k).evaluate(grid);
        double sup = 0.0, scale = 0.0;
        for (int m = 0; m < grid->size(); ++m) {
            if (std::abs(grid->node(m)) > grid->period() / 4.0) continue;
            sup = std::max(sup, std::abs(lhs.values[m] - rhs.values[m]));
            scale = std::max(scale, std::abs(rhs.values[m]));
        }
        const double rel = sup / scale;
        clause(rel <= 1e-6, "k = %d grid/exact relative sup: %.3e <= 1e-6", k, rel);
    }
    return flush_criterion(2, "algebraic closure of |D| on soliton powers", t.seconds());
}

// --- criterion 3: Hilbert identities ----------------------------------------

bool criterion_3() {
    Timer t;
    const GridPtr grid = make_grid(400.0, 8192);
    const GridFunction rho = bo_soliton(grid);

    const GridFunction h = hilbert(rho);
    const GridFunction ar = multiply_by_alpha(rho);
    const double as_stated = (h + ar).sup_norm();
    const double sign_flipped = (h - ar).sup_norm();
    clause(as_stated <= 1e-5, "||H(rho) + alpha rho||_inf: %.3e <= 1e-5", as_stated);
    std::printf("         (opposite sign ||H(rho) - alpha rho||_inf = %.3e; "
                "the identity holds with the + sign up to domain truncation)\n",
                sign_flipped);

    const GridFunction f = GridFunction::sample(
        grid, [](double a) { return std::exp(-0.5 * a * a); }, Parity::Even);
    const GridFunction comm = multiply_by_alpha(apply_modD(f)) - apply_modD(multiply_by_alpha(f));
    const double comm_defect = (comm + hilbert(f)).sup_norm();
    clause(comm_defect <= 1e-5, "||[alpha,|D|]f + Hf||_inf (unit Gaussian): %.3e <= 1e-5",
           comm_defect);
    std::printf("         (both defects are dominated by 1/L-scale domain truncation through "
                "the nonlocal kernel; they shrink to %.1e-level only for L ~ 1e6)\n",
                1e-5);
    return flush_criterion(3, "Hilbert identities at (400, 8192)", t.seconds());
}

// --- criterion 4: spectrum ---------------------------------------------------

bool criterion_4() {
    Timer t;
    const GridPtr grid = make_grid(400.0, 8192);
    const double golden_plus = 1.6180339887;
    const double golden_minus = -0.6180339887;
    const int m = 2048;

    OperatorMatrix even = assemble_operator_matrix(OperatorKind::LRho, BasisKind::EvenCosine, m,
                                                   grid);
    SpectrumReport er = eig_sym(even);
    double best_plus = 1e300, best_minus = 1e300;
    int idx_plus = -1, idx_minus = -1;
    for (int i = 0; i < m; ++i) {
        const double lam = er.eigenvalues[i];
        if (std::abs(lam - golden_plus) < best_plus) {
            best_plus = std::abs(lam - golden_plus);
            idx_plus = i;
        }
        if (std::abs(lam - golden_minus) < best_minus) {
            best_minus = std::abs(lam - golden_minus);
            idx_minus = i;
        }
    }
    clause(best_plus <= 5e-3, "eigenvalue near 1.6180339887 within %.3e (<= 5e-3)", best_plus);
    clause(best_minus <= 5e-3, "eigenvalue near -0.6180339887 within %.3e (<= 5e-3)", best_minus);
    double worst_other = -1e300;
    for (int i = 0; i < m; ++i)
        if (i != idx_plus && i != idx_minus) worst_other = std::max(worst_other, er.eigenvalues[i]);
    clause(worst_other <= -0.95, "all other even eigenvalues <= -0.95 (max %.4f)", worst_other);

    OperatorMatrix full = assemble_operator_matrix(OperatorKind::LRho, BasisKind::Full, m, grid);
    SpectrumReport fr = eig_sym(full);
    const bool found = fr.translational_index >= 0;
    const double zero_mag =
        found ? std::abs(fr.eigenvalues[fr.translational_index]) : 1e300;
    clause(found && zero_mag <= 5e-3, "full-basis zero eigenvalue |lambda| = %.3e <= 5e-3",
           zero_mag);
    clause(fr.translational_similarity >= 0.99,
           "kernel eigenvector correlates with rho' at %.6f >= 0.99",
           fr.translational_similarity);
    return flush_criterion(4, "spectrum of the soliton linearization", t.seconds());
}

// --- criterion 5: fixed point ------------------------------------------------

bool criterion_5() {
    Timer t;
    const GridPtr grid = make_grid(400.0, 8192);
    const double floor = truncation_floor(grid);
    const double budget = std::max(1e-8, 10.0 * floor);
    SolverOptions opts;
    opts.max_iterations = 200;

    std::vector<double> ratios;
    for (double eps : {0.02, 0.05, 0.1}) {
        const SolitonSolution sol = fixed_point_solve(eps, grid, opts);
        if (!sol.converged()) {
            clause(false, "eps = %.2f: no convergence within 200 iterations (%s)", eps,
                   sol.status == SolveStatus::BallEscape ? "ball escape" : "iteration cap");
            continue;
        }
        clause(true, "eps = %.2f converged in %d iterations", eps, sol.iterations);
        bool tail_ok = sol.iterate_gaps.size() >= 5;
        for (size_t i = sol.iterate_gaps.size() - 4; tail_ok && i < sol.iterate_gaps.size(); ++i)
            tail_ok = sol.iterate_gaps[i] < sol.iterate_gaps[i - 1];
        clause(tail_ok, "eps = %.2f: last five gaps strictly decreasing", eps);
        clause(sol.rescaled_residual_sup <= budget,
               "eps = %.2f: residual %.3e <= max(1e-8, 10*floor) = %.3e", eps,
               sol.rescaled_residual_sup, budget);
        const double even_defect = parity_defect(sol.phi, Parity::Even);
        clause(even_defect <= 1e-12, "eps = %.2f: evenness defect %.3e <= 1e-12", eps,
               even_defect);
        ratios.push_back(sol.x_norm_v / eps);
    }
    if (ratios.size() >= 2) {
        double lo = ratios[0], hi = ratios[0];
        for (double r : ratios) {
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        clause(hi / lo <= 3.0, "||v||_X / eps spread across converged runs: %.2f (<= 3)", hi / lo);
    } else {
        clause(false, "||v||_X / eps spread unavailable: fewer than two converged runs");
    }
    return flush_criterion(5, "fixed-point solves at eps in {0.02, 0.05, 0.1}", t.seconds());
}

// --- criterion 6: decay -------------------------------------------------------

bool criterion_6() {
    Timer t;
    const GridPtr grid = make_grid(400.0, 8192);
    const SolitonSolution sol = fixed_point_solve(0.05, grid);
    if (!sol.converged()) {
        clause(false, "eps = 0.05 solve did not converge");
        return flush_criterion(6, "far-field decay", t.seconds());
    }
    const DecayReport rep = decay_report(sol.v, 50.0);
    const double bound = 10.0 * (1.0 + M_PI) * 0.05 / (1.05 * 1.05);
    clause(rep.weighted_sup <= bound, "sup alpha^2 |v| on [50, 100]: %.4f <= %.4f",
           rep.weighted_sup, bound);
    clause(rep.loglog_slope >= -2.3 && rep.loglog_slope <= -1.7,
           "log-log slope of |v|: %.3f in [-2.3, -1.7]", rep.loglog_slope);
    return flush_criterion(6, "far-field decay of the correction", t.seconds());
}

// --- criterion 7: variational criticality -------------------------------------

bool criterion_7() {
    Timer t;
    // The criticality defect is controlled by the profile residual, which is
    // floor-limited; the refined grid puts it safely under the tolerance. The
    // iterate-gap tolerance moves with the grid because the weighted norm
    // amplifies solver noise roughly linearly in the period.
    const GridPtr grid = make_grid(1600.0, 32768);
    SolverOptions opts;
    opts.fp_tolerance = 5e-11;
    const SolitonSolution sol = fixed_point_solve(0.05, grid, opts);
    if (!sol.converged()) {
        clause(false, "eps = 0.05 solve did not converge on (1600, 32768)");
        return flush_criterion(7, "variational criticality", t.seconds());
    }
    PhysicalProfile prof = rescale_to_physical(sol, PhysicalParams::from_epsilon(0.05));
    const double crit = criticality_test(prof, 10, 1e-5, 0);
    clause(crit <= 1e-6, "max |d(E - cP)| over 10 seeded directions: %.3e <= 1e-6 "
                         "(grid 1600 x 32768)",
           crit);
    const GridFunction expect =
        -0.5 * prof.params.gamma * (prof.U * prof.U) - prof.params.c * prof.U;
    const double constraint = (prof.imQ - expect).sup_norm();
    clause(constraint <= 1e-12, "imQ constraint defect: %.3e <= 1e-12", constraint);
    return flush_criterion(7, "variational criticality at eps = 0.05", t.seconds());
}

// --- criterion 8: physical residual and admissibility --------------------------

bool criterion_8() {
    Timer t;
    const GridPtr grid = make_grid(400.0, 8192);
    const SolitonSolution sol = fixed_point_solve(0.05, grid);
    if (!sol.converged()) {
        clause(false, "eps = 0.05 solve did not converge");
        return flush_criterion(8, "physical residual", t.seconds());
    }
    PhysicalProfile prof = rescale_to_physical(sol, PhysicalParams::from_epsilon(0.05));
    auto [defect, sup] = babenko_residual(prof);
    const GridFunction resc = rescaled_equation_defect(sol.phi, 0.05);
    const double scaled = 0.05 * 0.05 * resc.sup_norm();
    const double rel = std::abs(sup - scaled) / sup;
    clause(rel <= 1e-10, "physical residual %.3e vs eps^2 * rescaled %.3e: relative gap %.3e",
           sup, scaled, rel);
    const Admissibility adm = admissibility_check(prof);
    clause(adm.sign_ok, "sign condition holds");
    clause(adm.height_margin > 0.4, "height margin %.4f > 0.4", adm.height_margin);
    std::printf("         (the profile has sup U = eps * sup phi ~ 0.21, so the margin "
                "c^2/2g - sup U sits near 0.34 by construction)\n");
    return flush_criterion(8, "physical residual and admissibility", t.seconds());
}

// --- criterion 9: continuation -------------------------------------------------

bool criterion_9() {
    Timer t;
    const GridPtr grid = make_grid(800.0, 16384);
    ContinuationControls controls;
    const SolitonSolution seed = fixed_point_solve(0.02, grid, controls.solver);
    if (!seed.converged()) {
        clause(false, "seed solve at eps = 0.02 did not converge");
        return flush_criterion(9, "continuation", t.seconds());
    }
    PhysicalProfile start = rescale_to_physical(seed, PhysicalParams::from_epsilon(0.02));
    babenko_residual(start);

    const Branch branch = trace_branch(start, 1.2, controls);
    clause(branch.reached_target(), "branch from eps 0.02 reached eps 0.2 (%zu points, stop %s)",
           branch.points.size(), to_string(branch.stop_reason).c_str());

    double worst_resid = 0.0;
    for (const auto& pt : branch.points) worst_resid = std::max(worst_resid, pt.babenko_residual_sup);
    clause(worst_resid <= 1e-7, "every accepted point residual: max %.3e <= 1e-7", worst_resid);

    // Three interior points against direct solves on matched physical grids.
    int compared = 0;
    bool agree = true;
    PhysicalProfile current = start;
    for (size_t i = 1; i + 1 < branch.points.size() && compared < 3; ++i) {
        const auto& pt = branch.points[i];
        current = continuation_step(current, pt.c, controls);
        const double eps = pt.c - 1.0;
        if (eps > 0.09) break;  // keep the direct Picard solves in their convergent regime
        const double L_resc = start.U.grid->period() * eps / (pt.c * pt.c);
        const GridPtr match = make_grid(L_resc, start.U.grid->size());
        const SolitonSolution direct_sol = fixed_point_solve(eps, match, controls.solver);
        if (!direct_sol.converged()) {
            clause(false, "direct solve at eps = %.4f did not converge", eps);
            agree = false;
            ++compared;
            continue;
        }
        const PhysicalProfile direct =
            rescale_to_physical(direct_sol, PhysicalParams::from_epsilon(eps));
        double sup = 0.0;
        for (int mm = 0; mm < current.U.size(); ++mm)
            sup = std::max(sup, std::abs(current.U.values[mm] - direct.U.values[mm]));
        clause(sup <= 1e-5, "interior point eps = %.4f agrees with direct solve: %.3e <= 1e-5",
               eps, sup);
        agree = agree && (sup <= 1e-5);
        ++compared;
    }
    if (compared < 3) clause(false, "only %d interior comparison(s) completed", compared);

    // Forcing the height past the threshold stops the trace immediately.
    PhysicalProfile forced = start;
    double sup_u = 0.0;
    for (double v : forced.U.values) sup_u = std::max(sup_u, v);
    forced.U = (1.05 * forced.params.max_height() / sup_u) * forced.U;
    const Branch stopped = trace_branch(forced, 1.2, controls);
    clause(stopped.stop_reason == StopReason::HeightMarginCollapse,
           "inflated profile stops with height_margin_collapse (got %s)",
           to_string(stopped.stop_reason).c_str());
    return flush_criterion(9, "branch continuation to eps = 0.2", t.seconds());
}

// --- criterion 10: expansion ----------------------------------------------------

bool criterion_10() {
    Timer t;
    const GridPtr grid = make_grid(400.0, 8192);
    const GridFunction rho = bo_soliton(grid);

    {
        const GridFunction phi = rho + 0.1 * (rho * rho);
        const ExpansionFit fit = expansion_fit(phi, 2, 50.0, 100.0);
        const double err = std::abs(fit.coefficients[1] - 0.1);
        clause(err <= 1e-8, "constructed input recovers a2 = 0.1 within %.3e (<= 1e-8)", err);
    }

    auto fit_at = [&](double eps) {
        const SolitonSolution sol = fixed_point_solve(eps, grid);
        REQUIRE_OR_DIE(sol.converged());
        return expansion_fit(sol.phi, 2, 50.0, 100.0);
    };
    const ExpansionFit f5 = fit_at(0.05);
    const ExpansionFit f25 = fit_at(0.025);
    const double ratio = f5.coefficients[1] / f25.coefficients[1];
    clause(ratio >= 1.0 && ratio <= 4.0, "a2(0.05)/a2(0.025) = %.3f in [1, 4]", ratio);
    clause(std::isfinite(f5.remainder_sups[1]) && f5.remainder_sups[1] > 0.0,
           "far-field remainder sup alpha^4 |g2| = %.3e finite", f5.remainder_sups[1]);
    return flush_criterion(10, "soliton-power expansion fits", t.seconds());
}

// --- criterion 11: determinism ---------------------------------------------------

std::string run_cli_verify(const std::string& dir) {
    const std::string cmd = "cd " + dir + " && " + SOLWAVE_CLI_PATH +
                            " verify --L 200 --n 2048 > /dev/null 2>&1";
    if (std::system(cmd.c_str()) < 0) return {};
    std::ifstream is(dir + "/verify_report.json");
    std::ostringstream ss;
    ss << is.rdbuf();
    std::ifstream im(dir + "/verify_manifest.json");
    ss << im.rdbuf();
    return ss.str();
}

bool criterion_11() {
    Timer t;
    const VerifyReport a = run_verify(400.0, 8192);
    const VerifyReport b = run_verify(400.0, 8192);
    clause(a.to_json().dump(2) == b.to_json().dump(2),
           "repeated in-process verify reports are byte-identical");

    const std::string d1 = "/tmp/solwave_accept_v1", d2 = "/tmp/solwave_accept_v2";
    const int mkdir_rc = std::system(("mkdir -p " + d1 + " " + d2).c_str());
    if (mkdir_rc != 0) clause(false, "could not create scratch directories");
    const std::string r1 = run_cli_verify(d1);
    const std::string r2 = run_cli_verify(d2);
    clause(!r1.empty() && r1 == r2, "repeated CLI verify runs write bit-identical JSON");
    return flush_criterion(11, "determinism of the verify pipeline", t.seconds());
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);
    }

    bool (*criteria[])() = {criterion_1, criterion_2, criterion_3, criterion_4,
                            criterion_5, criterion_6, criterion_7, criterion_8,
                            criterion_9, criterion_10, criterion_11};
    bool all = true;
    for (int id = 1; id <= 11; ++id) {
        if (only != 0 && id != only) continue;
        all = criteria[id - 1]() && all;
    }
    return all ? 0 : 1;
}
