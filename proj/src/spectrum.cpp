#include "solwave/spectrum.hpp"

#include "solwave/bo_soliton.hpp"
#include "solwave/krylov.hpp"
#include "solwave/norms.hpp"
#include "solwave/operators.hpp"

#include <cmath>
#include <limits>

namespace solwave {

GridFunction apply_babenko_linearization(const PhysicalParams& p, const GridFunction& U,
                                         const GridFunction& w) {
    require_same_grid(U, w);
    const double g = p.g, c = p.c, gamma = p.gamma, g2 = gamma * gamma;
    const GridFunction U2 = U * U;
    const GridFunction dU = apply_modD(U);
    const GridFunction dw = apply_modD(w);
    const GridFunction Uw = U * w;

    GridFunction out = (g + c * gamma) * w + g2 * (U * w) - (c * c) * dw;
    out = out + g * ((U * dw) + (dU * w) + apply_modD(Uw));
    out = out - 0.5 * g2 *
                    (2.0 * (U * apply_modD(Uw)) + (w * apply_modD(U2)) - (U2 * dw) -
                     2.0 * (Uw * dU) - apply_modD(U2 * w));
    return out;
}

GridFunction basis_function(const GridPtr& grid, BasisKind basis, int j) {
    const double L = grid->period();
    if (j == 0) {
        return GridFunction(grid, std::vector<double>(grid->size(), 1.0 / std::sqrt(L)),
                            Parity::Even);
    }
    int wave;
    bool is_cos;
    if (basis == BasisKind::EvenCosine) {
        wave = j;
        is_cos = true;
    } else {
        wave = (j + 1) / 2;
        is_cos = (j % 2 == 1);
    }
    const double xi = grid->wavenumber(wave);
    const double amp = std::sqrt(2.0 / L);
    return GridFunction::sample(
        grid, [&](double a) { return amp * (is_cos ? std::cos(xi * a) : std::sin(xi * a)); },
        is_cos ? Parity::Even : Parity::Odd);
}

Eigen::VectorXd basis_coefficients(const GridFunction& f, BasisKind basis, int modes) {
    const GridPtr& grid = f.grid;
    const auto spec = grid->forward(f.values);
    const double h = grid->spacing();
    const double L = grid->period();
    Eigen::VectorXd c(modes);
    for (int i = 0; i < modes; ++i) {
        if (i == 0) {
            c[0] = h * spec[0].real() / std::sqrt(L);
            continue;
        }
        int wave;
        bool is_cos;
        if (basis == BasisKind::EvenCosine) {
            wave = i;
            is_cos = true;
        } else {
            wave = (i + 1) / 2;
            is_cos = (i % 2 == 1);
        }
        // Nodes start at -L/2, which shifts the DFT reading by (-1)^wave.
        const double sign = (wave % 2 == 0) ? 1.0 : -1.0;
        const double amp = std::sqrt(2.0 / L) * h * sign;
        c[i] = is_cos ? amp * spec[wave].real() : -amp * spec[wave].imag();
    }
    return c;
}

OperatorMatrix assemble_operator_matrix(OperatorKind kind, BasisKind basis, int modes,
                                        const GridPtr& grid, const PhysicalProfile* profile) {
    if (kind == OperatorKind::LU && profile == nullptr)
        throw std::invalid_argument("assemble_operator_matrix: LU requires a profile");
    const GridPtr g = (kind == OperatorKind::LU) ? profile->U.grid : grid;
    if (modes < 2 || modes > g->size() / 2)
        throw std::invalid_argument("assemble_operator_matrix: modes out of range");
    const int max_wave = (basis == BasisKind::EvenCosine) ? modes - 1 : modes / 2;
    if (max_wave >= g->size() / 2)
        throw std::invalid_argument("assemble_operator_matrix: basis exceeds grid bandwidth");

    GridFunction rho = (kind == OperatorKind::LRho) ? bo_soliton(g) : GridFunction::zero(g);

    OperatorMatrix mat;
    mat.kind = kind;
    mat.basis = basis;
    mat.modes = modes;
    mat.grid = g;
    if (profile) mat.params = profile->params;
    mat.entries.resize(modes, modes);

    for (int j = 0; j < modes; ++j) {
        const GridFunction e = basis_function(g, basis, j);
        GridFunction Ae = e;
        switch (kind) {
            case OperatorKind::LRho:
                Ae = -e - apply_modD(e) + rho * e;
                break;
            case OperatorKind::ConstCoeff:
                Ae = -e - apply_modD(e);
                break;
            case OperatorKind::LU:
                Ae = apply_babenko_linearization(profile->params, profile->U, e);
                break;
        }
        mat.entries.col(j) = basis_coefficients(Ae, basis, modes);
    }

    const Eigen::MatrixXd asym = mat.entries - mat.entries.transpose();
    mat.pre_symmetrization_asymmetry = asym.cwiseAbs().maxCoeff();
    mat.entries = 0.5 * (mat.entries + mat.entries.transpose());
    return mat;
}

SpectrumReport eig_sym(const OperatorMatrix& matrix, const PhysicalProfile* profile) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix.entries);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eig_sym: eigensolver failed");

    SpectrumReport report;
    report.kind = matrix.kind;
    report.basis = matrix.basis;
    report.modes = matrix.modes;
    report.eigenvalues = solver.eigenvalues();
    report.eigenvectors = solver.eigenvectors();

    if (matrix.kind == OperatorKind::LU) {
        const auto& p = matrix.params;
        report.continuous_edge = p.g + p.c * p.gamma;
        if (profile) {
            double sup_u = profile->U.values[0];
            for (double v : profile->U.values) sup_u = std::max(sup_u, v);
            report.height_margin = p.max_height() - sup_u;
        }
    } else {
        report.continuous_edge = -1.0;
    }

    // Translational zero mode: correlate against the derivative of the
    // profile (rho' for the soliton operator). Only odd content, so it can
    // appear in the full basis alone.
    if (matrix.basis == BasisKind::Full) {
        GridFunction translation =
            (matrix.kind == OperatorKind::LU && profile)
                ? apply_derivative(profile->U)
                : bo_soliton_derivative(matrix.grid);
        Eigen::VectorXd t = basis_coefficients(translation, matrix.basis, matrix.modes);
        const double tn = t.norm();
        if (tn > 0) {
            t /= tn;
            for (int i = 0; i < matrix.modes; ++i) {
                const double sim = std::abs(t.dot(report.eigenvectors.col(i)));
                if (sim > report.translational_similarity) {
                    report.translational_similarity = sim;
                    report.translational_index = i;
                }
            }
            if (report.translational_similarity < 0.99) report.translational_index = -1;
        }
    }

    // Anything within 5% of the edge scale (or below it) counts as a
    // discretized-continuum artifact.
    const double buffer = 0.05 * std::max(1e-300, std::abs(report.continuous_edge));
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < matrix.modes; ++i) {
        const double lam = report.eigenvalues[i];
        if (lam <= report.continuous_edge + buffer) continue;
        if (i == report.translational_index) continue;
        if (std::abs(lam) < std::abs(best)) best = lam;
    }
    if (std::isfinite(best)) {
        report.lambda_min_nontrivial = best;
        report.has_discrete_eigenvalue = true;
    } else {
        report.lambda_min_nontrivial = report.eigenvalues[matrix.modes - 1];
        report.has_discrete_eigenvalue = false;
    }
    return report;
}

SpectrumDiagnostics spectrum_diagnostics(const SpectrumReport& report,
                                         const PhysicalProfile& profile, double eta) {
    SpectrumDiagnostics d;
    d.lambda_min_nontrivial = report.lambda_min_nontrivial;
    d.continuous_edge = report.continuous_edge;
    d.has_discrete_eigenvalue = report.has_discrete_eigenvalue;
    d.x_norm = x_norm(profile.U, eta);
    const auto adm = admissibility_check(profile);
    d.height_margin = adm.height_margin;
    return d;
}

GridFunction crop_centered(const GridFunction& f, int crop) {
    if (crop <= 0) return f;
    const GridPtr& g = f.grid;
    const int n = g->size();
    const int factor = 1 << crop;
    const int nc = n / factor;
    if (nc < 64) throw std::invalid_argument("crop_centered: resulting grid too small");
    GridPtr gc = make_grid(g->period() / factor, nc);
    // Node j of the cropped grid coincides with node j + n/2 - nc/2.
    std::vector<double> vals(nc);
    const int off = n / 2 - nc / 2;
    for (int j = 0; j < nc; ++j) vals[j] = f.values[j + off];
    return GridFunction(gc, std::move(vals), f.parity);
}

double smallest_even_eigenvalue(const PhysicalProfile& profile, double tolerance,
                                int max_iterations) {
    const GridPtr grid = profile.U.grid;
    const auto& p = profile.params;
    const double a0 = p.g + p.c * p.gamma;

    auto apply = [&](const std::vector<double>& x) {
        GridFunction w = project_parity(GridFunction(grid, x), Parity::Even);
        return project_parity(apply_babenko_linearization(p, profile.U, w), Parity::Even).values;
    };
    // Exact inverse of the constant-coefficient part a0 - c^2 |D|.
    auto precond = [&](const std::vector<double>& r) {
        auto spec = grid->forward(r);
        const int nh = grid->size() / 2;
        for (int k = 0; k <= nh; ++k) spec[k] /= a0 - p.c * p.c * grid->wavenumber(k);
        return grid->inverse(spec);
    };

    GridFunction y = GridFunction::sample(
        grid,
        [&](double a) {
            const double s = std::abs(a0) / (p.c * p.c);
            return std::exp(-0.5 * (s * a) * (s * a));
        },
        Parity::Even);
    double mu = 0.0, mu_prev = std::numeric_limits<double>::infinity();
    for (int it = 0; it < max_iterations; ++it) {
        GmresResult res = gmres(apply, precond, y.values, 1e-9, 400);
        GridFunction z = project_parity(GridFunction(grid, std::move(res.x)), Parity::Even);
        const double zn = l2_norm(z);
        if (zn == 0.0) throw std::runtime_error("smallest_even_eigenvalue: breakdown");
        z = (1.0 / zn) * z;
        GridFunction Az(grid, apply(z.values), Parity::Even);
        mu = inner_product(z, Az);
        y = z;
        if (std::abs(mu - mu_prev) <= tolerance * std::max(1.0, std::abs(mu))) break;
        mu_prev = mu;
    }
    return mu;
}

}  // namespace solwave
