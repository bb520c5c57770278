#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "solwave/bo_soliton.hpp"
#include "solwave/fixed_point.hpp"
#include "solwave/grid.hpp"
#include "solwave/krylov.hpp"
#include "solwave/norms.hpp"
#include "solwave/operators.hpp"

#include <cmath>
#include <random>

using namespace solwave;

namespace {

GridFunction random_even_bump(const GridPtr& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    const double a1 = amp(rng), a2 = amp(rng), w = 3.0 + 2.0 * amp(rng);
    return GridFunction::sample(
        g,
        [&](double a) {
            return a1 * std::exp(-0.5 * (a / w) * (a / w)) +
                   a2 * std::exp(-0.1 * a * a) * std::cos(0.5 * a);
        },
        Parity::Even);
}

}  // namespace

TEST_CASE("soliton samples and identity") {
    // a grid whose nodes include alpha = 0 and alpha = 1 exactly
    auto g = make_grid(512.0, 8192);
    auto rho = bo_soliton(g);
    CHECK(rho.values[g->size() / 2] == 4.0);
    const int m1 = g->size() / 2 + static_cast<int>(std::lround(1.0 / g->spacing()));
    CHECK(g->node(m1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rho.values[m1] == 2.0);
    CHECK(rho.parity == Parity::Even);

    auto gd = make_grid(400.0, 8192);
    CHECK(soliton_identity_defect(gd).sup_norm() <= 1e-3);
}

TEST_CASE("g_tilde") {
    auto g = make_grid(400.0, 8192);
    auto rho = bo_soliton(g);

    SUBCASE("vanishes at epsilon zero and at phi zero") {
        CHECK(g_tilde(rho, 0.0).sup_norm() == 0.0);
        CHECK(g_tilde(GridFunction::zero(g, Parity::Even), 0.3).sup_norm() == 0.0);
        CHECK_THROWS_AS(g_tilde(rho, -0.1), std::invalid_argument);
    }
    SUBCASE("leading order in epsilon is linear") {
        const double r2 = sobolev_norm(g_tilde(rho, 1e-2), 2) / 1e-2;
        const double r3 = sobolev_norm(g_tilde(rho, 1e-3), 2) / 1e-3;
        CHECK(std::abs(r2 - r3) / r3 < 0.05);
        CHECK(r3 > 0.0);
    }
    SUBCASE("preserves evenness") {
        CHECK(parity_defect(g_tilde(rho, 0.05), Parity::Even) < 1e-13);
    }
}

TEST_CASE("soliton linearization operator") {
    auto g = make_grid(400.0, 8192);
    auto rho = bo_soliton(g);

    SUBCASE("annihilates the translation mode up to the floor") {
        CHECK(apply_L(bo_soliton_derivative(g)).sup_norm() <= truncation_floor(g));
    }
    SUBCASE("constants map to rho minus one") {
        auto one = GridFunction(g, std::vector<double>(g->size(), 1.0), Parity::Even);
        CHECK((apply_L(one) - (rho + -1.0)).sup_norm() < 1e-13);
    }
    SUBCASE("symmetric under the grid inner product") {
        std::mt19937_64 rng(23);
        auto u = random_even_bump(g, rng);
        auto v = random_even_bump(g, rng);
        const double a = inner_product(apply_L(u), v);
        const double b = inner_product(u, apply_L(v));
        CHECK(a == doctest::Approx(b).epsilon(1e-12));
    }
}

TEST_CASE("even-subspace solve of the soliton linearization") {
    auto g = make_grid(400.0, 8192);
    auto rho = bo_soliton(g);
    std::mt19937_64 rng(29);

    SUBCASE("round trip on a random even function") {
        auto w0 = random_even_bump(g, rng);
        auto w = solve_L_even(apply_L(w0), 1e-12);
        CHECK((w - w0).sup_norm() < 1e-10 * (1.0 + w0.sup_norm()));
    }
    SUBCASE("rho minus one inverts to the constant") {
        auto one = GridFunction(g, std::vector<double>(g->size(), 1.0), Parity::Even);
        auto w = solve_L_even(rho + -1.0, 1e-12);
        CHECK((w - one).sup_norm() < 1e-9);
    }
    SUBCASE("spectral bound with the golden-ratio constant") {
        const double bound = 2.0 / (std::sqrt(5.0) - 1.0);
        for (int trial = 0; trial < 20; ++trial) {
            auto f = random_even_bump(g, rng);
            auto w = solve_L_even(f, 1e-12);
            CHECK(l2_norm(w) <= bound * l2_norm(f) * (1.0 + 1e-6));
        }
    }
    SUBCASE("odd input is rejected") {
        auto odd = multiply_by_alpha(rho);
        CHECK_THROWS_AS(solve_L_even(odd, 1e-12), std::invalid_argument);
    }
}

TEST_CASE("fixed point at epsilon zero returns the soliton in one pass") {
    auto g = make_grid(400.0, 8192);
    auto sol = fixed_point_solve(0.0, g);
    CHECK(sol.converged());
    CHECK(sol.iterations == 1);
    CHECK(sol.v.sup_norm() == 0.0);
    CHECK((sol.phi - bo_soliton(g)).sup_norm() == 0.0);
}

TEST_CASE("fixed point solve at epsilon 0.05") {
    auto g = make_grid(400.0, 8192);
    auto sol = fixed_point_solve(0.05, g);
    REQUIRE(sol.converged());
    CHECK(sol.iterations <= 80);

    SUBCASE("independent residual within the floor budget") {
        const double budget = std::max(1e-8, 10.0 * truncation_floor(g));
        CHECK(sol.rescaled_residual_sup <= budget);
        // the stored value comes from the same independent evaluation
        const double recomputed = rescaled_equation_defect(sol.phi, 0.05).sup_norm();
        CHECK(recomputed <= 2.0 * sol.rescaled_residual_sup);
        CHECK(sol.rescaled_residual_sup <= 2.0 * recomputed);
    }
    SUBCASE("phi and v are even and consistent") {
        CHECK(parity_defect(sol.phi, Parity::Even) <= 1e-12);
        CHECK((sol.v - (sol.phi - bo_soliton(g))).sup_norm() <= 1e-14);
    }
    SUBCASE("gap tail contracts strictly") {
        const auto& gaps = sol.iterate_gaps;
        REQUIRE(gaps.size() >= 6);
        for (size_t i = gaps.size() - 5; i < gaps.size(); ++i) CHECK(gaps[i] < gaps[i - 1]);
    }
    SUBCASE("far field decays at the soliton rate") {
        double sup = 0.0;
        for (int m = 0; m < g->size(); ++m) {
            const double a = std::abs(g->node(m));
            if (a < 50.0 || a > g->period() / 4.0) continue;
            sup = std::max(sup, a * a * std::abs(sol.v.values[m]));
        }
        CHECK(sup <= 10.0 * (1.0 + M_PI) * 0.05 / (1.05 * 1.05));
    }
}

TEST_CASE("fixed point diagnostics") {
    auto g = make_grid(400.0, 8192);

    SUBCASE("ball escape is reported, not clamped") {
        SolverOptions opts;
        opts.ball_factor_k = 1.0;  // far below the measured correction size
        auto sol = fixed_point_solve(0.05, g, opts);
        CHECK(sol.status == SolveStatus::BallEscape);
        CHECK_FALSE(sol.converged());
    }
    SUBCASE("epsilon above the regime cap only warns") {
        SolverOptions opts;
        opts.max_iterations = 2;
        opts.ball_factor_k = 1e9;
        auto sol = fixed_point_solve(0.6, g, opts);
        CHECK(sol.epsilon_out_of_regime);
    }
    SUBCASE("negative epsilon is rejected") {
        CHECK_THROWS_AS(fixed_point_solve(-0.01, g), std::invalid_argument);
    }
    SUBCASE("correction norm scales with epsilon") {
        auto a = fixed_point_solve(0.02, g);
        auto b = fixed_point_solve(0.05, g);
        REQUIRE(a.converged());
        REQUIRE(b.converged());
        const double ra = a.x_norm_v / 0.02;
        const double rb = b.x_norm_v / 0.05;
        CHECK(std::max(ra, rb) / std::min(ra, rb) < 2.0);
    }
}
