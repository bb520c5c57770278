#pragma once

#include "solwave/fixed_point.hpp"
#include "solwave/grid.hpp"

#include <cstdint>
#include <utility>

namespace solwave {

/// The parameter triple (g, gamma, c).
///
/// epsilon() is the amplitude scale |g + c*gamma| / gamma^2 of the wave;
/// epsilon_normalized() = |g + c*gamma| / g is the value of eps after the
/// exact reduction to g = 1, gamma = -1, c = 1 + eps, and is the parameter
/// the profile equation is solved at. The two coincide in the normalized
/// setting, which is the only one the standard pipelines use.
struct PhysicalParams {
    double g = 1.0;
    double gamma = -1.0;
    double c = 1.0;

    static PhysicalParams from_epsilon(double eps) { return {1.0, -1.0, 1.0 + eps}; }

    double epsilon() const { return std::abs(g + c * gamma) / (gamma * gamma); }
    double epsilon_normalized() const { return std::abs(g + c * gamma) / g; }
    bool sign_ok() const { return g + c * gamma < 0.0; }
    /// 2 g sup U < c^2 threshold value.
    double max_height() const { return c * c / (2.0 * g); }

    void validate() const;
};

/// A solitary wave in physical variables on the rescaled grid
/// L_phys = L * c^2 / |g + c*gamma|.
struct PhysicalProfile {
    PhysicalParams params;
    GridFunction U;      // Im W, even
    GridFunction imQ;    // -gamma/2 U^2 - c U
    GridFunction reW;    // H U, odd
    GridFunction reQ;    // H imQ = -c H U - gamma/2 H(U^2), odd
    double babenko_residual_sup = 0.0;
};

/// Map a converged rescaled solution onto physical variables and rebuild
/// (W, Q). The physical grid reuses the node count; sample m of U is the
/// rescaled sample m of phi times the amplitude factor, so no resampling
/// error enters.
PhysicalProfile rescale_to_physical(const SolitonSolution& sol, const PhysicalParams& params);

/// Rebuild imQ, reW, reQ of a profile from its U; asserts parities.
void reconstruct_wq(PhysicalProfile& profile);

/// Left-minus-right side of the steady profile equation
///   (g + c*gamma - c^2 |D|) U
///     = -gamma^2/2 U^2 - g U|D|U - g/2 |D|U^2
///       + gamma^2/2 ( U|D|U^2 - U^2|D|U - 1/3 |D|U^3 ).
GridFunction babenko_operator(const PhysicalParams& params, const GridFunction& U);

/// Pointwise defect and its sup norm; the sup is stored on the profile.
std::pair<GridFunction, double> babenko_residual(PhysicalProfile& profile);

struct EnergyMomentum {
    double energy = 0.0;
    double momentum = 0.0;
    // Pieces of the momentum integrand, reported for sign diagnostics:
    // momentum = -(piece_dq_u + piece_u2).
    double piece_dq_u = 0.0;
    double piece_u2 = 0.0;
};

/// Total energy and horizontal momentum by grid quadrature, for an
/// arbitrary (U, imQ) pair (the pair is not assumed to satisfy the
/// constraint; the criticality test perturbs them independently).
EnergyMomentum energy_momentum(const PhysicalParams& params, const GridFunction& U,
                               const GridFunction& imQ);
EnergyMomentum functionals(const PhysicalProfile& profile);

/// Max over seeded random even smooth direction pairs (w1, w2) of
/// |d/ds (E - c P)((U, imQ) + s (w1, w2))| at s = 0 by centered differences,
/// normalized per unit H^1 norm of the pair.
double criticality_test(const PhysicalProfile& profile, int n_directions, double fd_step,
                        std::uint64_t seed = 0);

struct Admissibility {
    bool sign_ok = false;
    double height_margin = 0.0;  // c^2/(2g) - sup U; positive means elliptic
};

Admissibility admissibility_check(const PhysicalProfile& profile);

}  // namespace solwave
