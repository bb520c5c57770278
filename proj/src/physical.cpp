#include "solwave/physical.hpp"

#include "solwave/norms.hpp"
#include "solwave/operators.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace solwave {

void PhysicalParams::validate() const {
    if (!(g > 0.0)) throw std::invalid_argument("PhysicalParams: g must be positive");
    if (gamma == 0.0) throw std::invalid_argument("PhysicalParams: gamma must be nonzero");
}

PhysicalProfile rescale_to_physical(const SolitonSolution& sol, const PhysicalParams& params) {
    params.validate();
    if (!params.sign_ok())
        throw std::invalid_argument("rescale_to_physical: sign condition g + c*gamma < 0 violated");
    const double eps_n = params.epsilon_normalized();
    if (std::abs(sol.epsilon - eps_n) > 1e-12 * std::max(1.0, eps_n))
        throw std::invalid_argument("rescale_to_physical: solution epsilon does not match params");

    const double s = std::abs(params.g + params.c * params.gamma);
    const double amplitude = s / (params.gamma * params.gamma);
    const double stretch = params.c * params.c / s;  // physical alpha = stretch * rescaled alpha

    const GridPtr resc = sol.phi.grid;
    const GridPtr phys = make_grid(resc->period() * stretch, resc->size());

    PhysicalProfile profile;
    profile.params = params;
    std::vector<double> u(resc->size());
    for (int m = 0; m < resc->size(); ++m) u[m] = amplitude * sol.phi.values[m];
    profile.U = GridFunction(phys, std::move(u), Parity::Even);
    reconstruct_wq(profile);
    return profile;
}

void reconstruct_wq(PhysicalProfile& profile) {
    const auto& p = profile.params;
    const GridFunction& U = profile.U;
    if (parity_defect(U, Parity::Even) > 1e-10 * (1.0 + U.sup_norm()))
        throw std::invalid_argument("reconstruct_wq: U must be even");

    const GridFunction U2 = U * U;
    profile.imQ = -0.5 * p.gamma * U2 - p.c * U;
    profile.imQ.parity = Parity::Even;
    profile.reW = hilbert(U);
    // Q pairs holomorphically with its imaginary part: reQ = H(imQ). Written
    // out, that is -c H U - gamma/2 H(U^2); the c-term sign is what keeps the
    // spectrum of Q one-sided alongside W.
    profile.reQ = -p.c * profile.reW - 0.5 * p.gamma * hilbert(U2);
    profile.reQ.parity = Parity::Odd;

    const double scale = 1.0 + U.sup_norm();
    if (parity_defect(profile.reW, Parity::Odd) > 1e-9 * scale ||
        parity_defect(profile.reQ, Parity::Odd) > 1e-9 * scale)
        throw std::runtime_error("reconstruct_wq: Hilbert transforms lost oddness");
}

GridFunction babenko_operator(const PhysicalParams& p, const GridFunction& U) {
    const double g = p.g, c = p.c, gamma = p.gamma, g2 = p.gamma * p.gamma;
    const GridFunction U2 = U * U;
    const GridFunction dU = apply_modD(U);
    const GridFunction dU2 = apply_modD(U2);
    GridFunction lhs = (g + c * gamma) * U - (c * c) * dU;
    GridFunction rhs = -0.5 * g2 * U2 - g * (U * dU) - 0.5 * g * dU2 +
                       0.5 * g2 * ((U * dU2) - (U2 * dU) - (1.0 / 3.0) * apply_modD(U2 * U));
    return lhs - rhs;
}

std::pair<GridFunction, double> babenko_residual(PhysicalProfile& profile) {
    GridFunction defect = babenko_operator(profile.params, profile.U);
    const double sup = defect.sup_norm();
    profile.babenko_residual_sup = sup;
    return {std::move(defect), sup};
}

EnergyMomentum energy_momentum(const PhysicalParams& p, const GridFunction& U,
                               const GridFunction& imQ) {
    require_same_grid(U, imQ);
    const double g = p.g, gamma = p.gamma, g2 = p.gamma * p.gamma;
    const GridFunction dQ = apply_modD(imQ);
    const GridFunction dU = apply_modD(U);
    const GridFunction U2 = U * U;
    const GridFunction one_plus_dU = dU + 1.0;

    EnergyMomentum out;
    out.energy = 0.5 * (inner_product(dQ, imQ) + g * inner_product(U2, one_plus_dU) +
                        gamma * inner_product(dQ, U2) +
                        (g2 / 3.0) * inner_product(U2 * U, one_plus_dU));
    out.piece_dq_u = inner_product(dQ, U);
    out.piece_u2 = 0.5 * gamma * inner_product(U2, one_plus_dU);
    out.momentum = -(out.piece_dq_u + out.piece_u2);
    return out;
}

EnergyMomentum functionals(const PhysicalProfile& profile) {
    return energy_momentum(profile.params, profile.U, profile.imQ);
}

namespace {

// Even, smooth, soliton-scale bump with a few random oscillations.
GridFunction random_even_direction(const GridPtr& grid, double width, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::uniform_real_distribution<double> spread(0.5, 2.0);
    std::uniform_real_distribution<double> freq(0.0, 3.0);
    struct Term {
        double a, s, b;
    };
    Term t[3];
    for (auto& term : t) term = {amp(rng), spread(rng) * width, freq(rng) / width};
    return GridFunction::sample(
        grid,
        [&](double a) {
            double v = 0.0;
            for (const auto& term : t)
                v += term.a * std::exp(-0.5 * (a / term.s) * (a / term.s)) * std::cos(term.b * a);
            return v;
        },
        Parity::Even);
}

}  // namespace

double criticality_test(const PhysicalProfile& profile, int n_directions, double fd_step,
                        std::uint64_t seed) {
    if (fd_step < 1e-7 || fd_step > 1e-4)
        throw std::invalid_argument("criticality_test: fd_step must lie in [1e-7, 1e-4]");
    const auto& p = profile.params;
    const GridPtr grid = profile.U.grid;
    const double width = p.sign_ok()
                             ? p.c * p.c / std::abs(p.g + p.c * p.gamma)
                             : grid->period() / 40.0;

    std::mt19937_64 rng(seed);
    auto lagrangian = [&](const GridFunction& U, const GridFunction& Q) {
        const EnergyMomentum em = energy_momentum(p, U, Q);
        return em.energy - p.c * em.momentum;
    };

    double worst = 0.0;
    for (int d = 0; d < n_directions; ++d) {
        GridFunction w1 = random_even_direction(grid, width, rng);
        GridFunction w2 = random_even_direction(grid, width, rng);
        const double h1 = std::sqrt(std::pow(sobolev_norm(w1, 1), 2) + std::pow(sobolev_norm(w2, 1), 2));
        if (h1 == 0.0) continue;
        w1 = (1.0 / h1) * w1;
        w2 = (1.0 / h1) * w2;

        const double plus = lagrangian(profile.U + fd_step * w1, profile.imQ + fd_step * w2);
        const double minus = lagrangian(profile.U - fd_step * w1, profile.imQ - fd_step * w2);
        worst = std::max(worst, std::abs(plus - minus) / (2.0 * fd_step));
    }
    return worst;
}

Admissibility admissibility_check(const PhysicalProfile& profile) {
    Admissibility adm;
    adm.sign_ok = profile.params.sign_ok();
    double sup_u = -std::numeric_limits<double>::infinity();
    for (double v : profile.U.values) sup_u = std::max(sup_u, v);
    adm.height_margin = profile.params.max_height() - sup_u;
    return adm;
}

}  // namespace solwave
