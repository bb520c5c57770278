#include "solwave/bo_soliton.hpp"

#include "solwave/krylov.hpp"
#include "solwave/operators.hpp"

#include <cmath>

namespace solwave {

GridFunction bo_soliton(const GridPtr& grid) {
    return GridFunction::sample(
        grid, [](double a) { return 4.0 / (1.0 + a * a); }, Parity::Even);
}

GridFunction bo_soliton_derivative(const GridPtr& grid) {
    return GridFunction::sample(
        grid,
        [](double a) {
            const double d = 1.0 + a * a;
            return -8.0 * a / (d * d);
        },
        Parity::Odd);
}

GridFunction soliton_identity_defect(const GridPtr& grid) {
    const GridFunction rho = bo_soliton(grid);
    return -rho - apply_modD(rho) + 0.5 * (rho * rho);
}

double truncation_floor(const GridPtr& grid) { return soliton_identity_defect(grid).sup_norm(); }

GridFunction g_tilde(const GridFunction& phi, double epsilon) {
    if (epsilon < 0.0) throw std::invalid_argument("g_tilde: epsilon must be nonnegative");
    if (epsilon == 0.0) return GridFunction::zero(phi.grid, phi.parity);
    const double c2 = (1.0 + epsilon) * (1.0 + epsilon);
    const GridFunction phi2 = phi * phi;
    const GridFunction phi3 = phi2 * phi;
    const GridFunction d_phi = apply_modD(phi);
    const GridFunction d_phi2 = apply_modD(phi2);

    GridFunction quad = -1.0 * (phi * d_phi) - 0.5 * d_phi2;
    GridFunction cubic = 0.5 * (phi * d_phi2) - 0.5 * (phi2 * d_phi) - (1.0 / 6.0) * apply_modD(phi3);
    return (epsilon / c2) * quad + (epsilon * epsilon / c2) * cubic;
}

GridFunction apply_L(const GridFunction& w, const GridFunction& rho_fn) {
    return -w - apply_modD(w) + rho_fn * w;
}

GridFunction apply_L(const GridFunction& w) { return apply_L(w, bo_soliton(w.grid)); }

GridFunction solve_L_even(const GridFunction& f, double rel_tolerance, int max_iterations) {
    if (f.parity != Parity::Even && parity_defect(f, Parity::Even) > 1e-10 * (1.0 + f.sup_norm()))
        throw std::invalid_argument("solve_L_even: right-hand side must be even");
    const GridPtr grid = f.grid;
    const GridFunction rho = bo_soliton(grid);

    auto apply = [&](const std::vector<double>& x) {
        GridFunction gx = project_parity(GridFunction(grid, x), Parity::Even);
        return project_parity(apply_L(gx, rho), Parity::Even).values;
    };
    // Exact multiplier inverse of the constant-coefficient part -(1+|D|).
    auto precond = [&](const std::vector<double>& r) {
        GridFunction gr(grid, r);
        return (-1.0 * solve_one_plus_modD(gr)).values;
    };

    const GridFunction fe = project_parity(f, Parity::Even);
    GmresResult res = gmres(apply, precond, fe.values, rel_tolerance, max_iterations);
    return project_parity(GridFunction(grid, std::move(res.x)), Parity::Even);
}

GridFunction rescaled_equation_defect(const GridFunction& phi, double epsilon) {
    return -phi - apply_modD(phi) + 0.5 * (phi * phi) - g_tilde(phi, epsilon);
}

}  // namespace solwave
