// Command-line driver: solve, spectrum, continue, expand, verify.
//
// Exit codes: 0 success, 1 diagnostic failure (non-convergence or a branch
// stop before the target), 2 usage error. Every run writes a JSON manifest
// with the fully resolved configuration and the measured truncation floor
// next to its primary output.

#include "solwave/bo_soliton.hpp"
#include "solwave/continuation.hpp"
#include "solwave/expansion.hpp"
#include "solwave/fixed_point.hpp"
#include "solwave/io.hpp"
#include "solwave/norms.hpp"
#include "solwave/physical.hpp"
#include "solwave/spectrum.hpp"
#include "solwave/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>

namespace {

using namespace solwave;
using nlohmann::json;

std::string stem_of(const std::string& path) {
    const auto dot = path.find_last_of('.');
    const auto slash = path.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path;
    return path.substr(0, dot);
}

json options_json(const SolverOptions& o) {
    json j;
    j["ball_factor_k"] = o.ball_factor_k;
    j["eta"] = o.eta;
    j["fp_tolerance"] = o.fp_tolerance;
    j["max_iterations"] = o.max_iterations;
    j["linear_solve_tolerance"] = o.linear_solve_tolerance;
    return j;
}

json controls_json(const ContinuationControls& c) {
    json j;
    j["solver"] = options_json(c.solver);
    j["safety"] = c.safety;
    j["s1"] = c.s1;
    j["s2"] = c.s2;
    j["s3"] = c.s3;
    j["min_step"] = c.min_step;
    j["velocity_cap_factor"] = c.velocity_cap_factor;
    j["margin_floor_rel"] = c.margin_floor_rel;
    j["lambda_floor_rel"] = c.lambda_floor_rel;
    j["xnorm_blowup_factor"] = c.xnorm_blowup_factor;
    j["newton_polish"] = c.newton_polish;
    return j;
}

struct Common {
    double L = 400.0;
    int n = 8192;
    std::uint64_t seed = 0;
};

void write_manifest(const std::string& path, json manifest, const GridPtr& grid) {
    manifest["truncation_floor"] = truncation_floor(grid);
    write_json(path, manifest);
}

int run_solve(const Common& common, std::optional<double> epsilon, std::optional<double> g,
              std::optional<double> gamma, std::optional<double> c, const std::string& out) {
    PhysicalParams params;
    if (epsilon) {
        params = PhysicalParams::from_epsilon(*epsilon);
    } else {
        params = {*g, *gamma, *c};
        params.validate();
        if (!params.sign_ok()) {
            std::fprintf(stderr, "solve: sign condition g + c*gamma < 0 violated\n");
            return 1;
        }
    }
    const double eps = params.epsilon_normalized();
    const GridPtr grid = make_grid(common.L, common.n);
    const SolverOptions opts;
    const SolitonSolution sol = fixed_point_solve(eps, grid, opts);

    json manifest;
    manifest["command"] = "solve";
    manifest["period_L"] = common.L;
    manifest["size_n"] = common.n;
    manifest["epsilon"] = eps;
    manifest["g"] = params.g;
    manifest["gamma"] = params.gamma;
    manifest["c"] = params.c;
    manifest["seed"] = common.seed;
    manifest["options"] = options_json(opts);
    manifest["converged"] = sol.converged();
    manifest["iterations"] = sol.iterations;
    manifest["epsilon_out_of_regime"] = sol.epsilon_out_of_regime;

    if (!sol.converged()) {
        manifest["status"] =
            sol.status == SolveStatus::BallEscape ? "ball_escape" : "max_iterations";
        write_manifest(stem_of(out) + "_manifest.json", manifest, grid);
        std::fprintf(stderr, "solve: fixed point did not converge (%s)\n",
                     manifest["status"].get<std::string>().c_str());
        return 1;
    }

    PhysicalProfile profile = rescale_to_physical(sol, params);
    babenko_residual(profile);
    write_profile_csv(out, sol, profile);
    write_json(stem_of(out) + ".json", profile_sidecar_json(sol, profile, grid));
    manifest["status"] = "converged";
    manifest["outputs"] = {out, stem_of(out) + ".json"};
    write_manifest(stem_of(out) + "_manifest.json", manifest, grid);
    std::printf("solve: eps=%g iterations=%d rescaled residual %.3e physical residual %.3e\n", eps,
                sol.iterations, sol.rescaled_residual_sup, profile.babenko_residual_sup);
    return 0;
}

int run_spectrum(const Common& common, double epsilon, int modes, const std::string& basis,
                 const std::string& out) {
    const GridPtr grid = make_grid(common.L, common.n);
    const SolverOptions opts;
    const SolitonSolution sol = fixed_point_solve(epsilon, grid, opts);
    json manifest;
    manifest["command"] = "spectrum";
    manifest["period_L"] = common.L;
    manifest["size_n"] = common.n;
    manifest["epsilon"] = epsilon;
    manifest["modes"] = modes;
    manifest["basis"] = basis;
    manifest["seed"] = common.seed;
    manifest["options"] = options_json(opts);
    if (!sol.converged()) {
        write_manifest(stem_of(out) + "_manifest.json", manifest, grid);
        std::fprintf(stderr, "spectrum: profile solve did not converge\n");
        return 1;
    }
    PhysicalProfile profile = rescale_to_physical(sol, PhysicalParams::from_epsilon(epsilon));
    const BasisKind bk = (basis == "full") ? BasisKind::Full : BasisKind::EvenCosine;
    OperatorMatrix mat =
        assemble_operator_matrix(OperatorKind::LU, bk, modes, profile.U.grid, &profile);
    SpectrumReport report = eig_sym(mat, &profile);
    const SpectrumDiagnostics diag = spectrum_diagnostics(report, profile, opts.eta);

    json j = spectrum_report_json(report);
    j["x_norm"] = diag.x_norm;
    write_json(out, j);
    manifest["outputs"] = {out};
    write_manifest(stem_of(out) + "_manifest.json", manifest, grid);
    std::printf("spectrum: lambda_min_nontrivial=%.6e edge=%.6e margin=%.6e\n",
                diag.lambda_min_nontrivial, diag.continuous_edge, diag.height_margin);
    return 0;
}

int run_continue(const Common& common, double g, double gamma, double from_eps,
                 std::optional<double> to_eps, std::optional<double> to_c,
                 const std::string& out) {
    // Branch runs are residual-critical: the working grid is sized so the
    // inherited seed residual sits well under the acceptance level.
    const double L = (common.L == 400.0) ? 800.0 : common.L;
    const int n = (common.n == 8192) ? 16384 : common.n;

    PhysicalParams start_params{g, gamma, 0.0};
    // The sign condition picks the admissible side of the critical velocity.
    start_params.c = (gamma < 0) ? (1.0 + from_eps) * g / -gamma : -(1.0 + from_eps) * g / gamma;
    start_params.validate();
    const double c_target =
        to_c ? *to_c
             : ((gamma < 0) ? (1.0 + *to_eps) * g / -gamma : -(1.0 + *to_eps) * g / gamma);

    const GridPtr grid = make_grid(L, n);
    ContinuationControls controls;
    const SolitonSolution seed =
        fixed_point_solve(start_params.epsilon_normalized(), grid, controls.solver);

    json manifest;
    manifest["command"] = "continue";
    manifest["period_L"] = L;
    manifest["size_n"] = n;
    manifest["g"] = g;
    manifest["gamma"] = gamma;
    manifest["from_epsilon"] = from_eps;
    manifest["c_target"] = c_target;
    manifest["seed"] = common.seed;
    manifest["controls"] = controls_json(controls);
    if (!seed.converged()) {
        write_manifest(stem_of(out) + "_manifest.json", manifest, grid);
        std::fprintf(stderr, "continue: seed solve did not converge\n");
        return 1;
    }

    PhysicalProfile start = rescale_to_physical(seed, start_params);
    babenko_residual(start);
    const Branch branch = trace_branch(start, c_target, controls);

    write_json(out, branch_json(branch));
    write_branch_csv(stem_of(out) + ".csv", branch);
    manifest["outputs"] = {out, stem_of(out) + ".csv"};
    manifest["stop_reason"] = to_string(branch.stop_reason);
    manifest["points"] = branch.points.size();
    write_manifest(stem_of(out) + "_manifest.json", manifest, grid);
    std::printf("continue: %zu points, stop_reason=%s, last c=%.6f\n", branch.points.size(),
                to_string(branch.stop_reason).c_str(),
                branch.points.empty() ? 0.0 : branch.points.back().c);
    return branch.reached_target() ? 0 : 1;
}

int run_expand(const Common& common, double epsilon, int order, double fit_min,
               std::optional<double> fit_max_opt, const std::string& out) {
    const GridPtr grid = make_grid(common.L, common.n);
    const double fit_max = fit_max_opt ? *fit_max_opt : common.L / 4.0;
    const SolverOptions opts;
    const SolitonSolution sol = fixed_point_solve(epsilon, grid, opts);
    json manifest;
    manifest["command"] = "expand";
    manifest["period_L"] = common.L;
    manifest["size_n"] = common.n;
    manifest["epsilon"] = epsilon;
    manifest["order"] = order;
    manifest["fit_min"] = fit_min;
    manifest["fit_max"] = fit_max;
    manifest["seed"] = common.seed;
    manifest["options"] = options_json(opts);
    if (!sol.converged()) {
        write_manifest(stem_of(out) + "_manifest.json", manifest, grid);
        std::fprintf(stderr, "expand: profile solve did not converge\n");
        return 1;
    }
    const ExpansionFit fit = expansion_fit(sol.phi, order, fit_min, fit_max);
    const DecayReport decay = decay_report(sol.v, fit_min);
    json j = expansion_json(epsilon, fit, decay);
    j["modD_closure"] = modD_closure_table_json(5);
    write_json(out, j);
    manifest["outputs"] = {out};
    write_manifest(stem_of(out) + "_manifest.json", manifest, grid);
    std::printf("expand: N=%d a1=%.6e condition=%.3e\n", order, fit.coefficients[0],
                fit.condition_number);
    return 0;
}

int run_verify_cmd(const Common& common) {
    const VerifyReport report = run_verify(common.L, common.n);
    print_verify_table(report);
    write_json("verify_report.json", report.to_json());

    json manifest;
    manifest["command"] = "verify";
    manifest["period_L"] = common.L;
    manifest["size_n"] = common.n;
    manifest["seed"] = common.seed;
    manifest["truncation_floor"] = report.truncation_floor;
    manifest["outputs"] = {"verify_report.json"};
    write_json("verify_manifest.json", manifest);
    return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral solver for solitary gravity waves with constant vorticity"};
    app.require_subcommand(1);

    Common common;
    app.add_option("--seed", common.seed, "random seed for derivative directions");

    // solve
    auto* solve = app.add_subcommand("solve", "compute a solitary-wave profile");
    std::optional<double> s_eps, s_g, s_gamma, s_c;
    std::string s_out;
    solve->add_option("--epsilon", s_eps, "normalized setting g=1, gamma=-1, c=1+eps");
    solve->add_option("--g", s_g, "gravity");
    solve->add_option("--gamma", s_gamma, "vorticity");
    solve->add_option("--c", s_c, "velocity");
    solve->add_option("--L", common.L, "grid period");
    solve->add_option("--n", common.n, "grid size (power of two)");
    solve->add_option("--out", s_out, "profile CSV path")->required();

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "linearized operator spectrum at a solution");
    double sp_eps = 0.05;
    int sp_modes = 2048;
    std::string sp_basis = "even", sp_out;
    spectrum->add_option("--epsilon", sp_eps, "profile parameter")->required();
    spectrum->add_option("--modes", sp_modes, "basis size");
    spectrum->add_option("--basis", sp_basis, "even|full")->check(CLI::IsMember({"even", "full"}));
    spectrum->add_option("--L", common.L, "grid period");
    spectrum->add_option("--n", common.n, "grid size");
    spectrum->add_option("--out", sp_out, "report JSON path")->required();

    // continue
    auto* cont = app.add_subcommand("continue", "trace the branch in velocity");
    double c_g = 1.0, c_gamma = -1.0, c_from = 0.02;
    std::optional<double> c_to_eps, c_to_c;
    std::string c_out;
    cont->add_option("--g", c_g, "gravity");
    cont->add_option("--gamma", c_gamma, "vorticity");
    cont->add_option("--from-epsilon", c_from, "starting epsilon")->required();
    cont->add_option("--to-epsilon", c_to_eps, "target epsilon");
    cont->add_option("--to-c", c_to_c, "target velocity");
    cont->add_option("--L", common.L, "seed grid period (default 800 for branches)");
    cont->add_option("--n", common.n, "seed grid size (default 16384 for branches)");
    cont->add_option("--out", c_out, "branch JSON path")->required();

    // expand
    auto* expand = app.add_subcommand("expand", "fit the soliton-power expansion");
    double e_eps = 0.05, e_fit_min = 50.0;
    std::optional<double> e_fit_max;
    int e_order = 2;
    std::string e_out;
    expand->add_option("--epsilon", e_eps, "profile parameter")->required();
    expand->add_option("--order", e_order, "expansion order N");
    expand->add_option("--fit-min", e_fit_min, "inner edge of the fit window");
    expand->add_option("--fit-max", e_fit_max, "outer edge (default L/4)");
    expand->add_option("--L", common.L, "grid period");
    expand->add_option("--n", common.n, "grid size");
    expand->add_option("--out", e_out, "fit JSON path")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "run the identity suite");
    verify->add_option("--L", common.L, "grid period");
    verify->add_option("--n", common.n, "grid size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (solve->parsed()) {
            const bool have_triple = s_g && s_gamma && s_c;
            if (s_eps && (s_g || s_gamma || s_c)) {
                std::fprintf(stderr, "solve: --epsilon conflicts with --g/--gamma/--c\n");
                return 2;
            }
            if (!s_eps && !have_triple) {
                std::fprintf(stderr, "solve: give --epsilon or all of --g --gamma --c\n");
                return 2;
            }
            return run_solve(common, s_eps, s_g, s_gamma, s_c, s_out);
        }
        if (spectrum->parsed()) return run_spectrum(common, sp_eps, sp_modes, sp_basis, sp_out);
        if (cont->parsed()) {
            if (static_cast<bool>(c_to_eps) == static_cast<bool>(c_to_c)) {
                std::fprintf(stderr, "continue: give exactly one of --to-epsilon, --to-c\n");
                return 2;
            }
            return run_continue(common, c_g, c_gamma, c_from, c_to_eps, c_to_c, c_out);
        }
        if (expand->parsed())
            return run_expand(common, e_eps, e_order, e_fit_min, e_fit_max, e_out);
        if (verify->parsed()) return run_verify_cmd(common);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
