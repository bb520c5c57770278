#include "solwave/expansion.hpp"

#include "solwave/bo_soliton.hpp"
#include "solwave/operators.hpp"

#include <Eigen/Dense>

#include <limits>

#include <cmath>

namespace solwave {

ExpansionFit expansion_fit(const GridFunction& phi, int order, double fit_min, double fit_max) {
    if (order < 1 || order > 6) throw std::invalid_argument("expansion_fit: order must be in [1, 6]");
    const GridPtr& grid = phi.grid;
    if (!(fit_min > 0.0) || !(fit_min < fit_max) || fit_max > grid->period() / 4.0)
        throw std::invalid_argument("expansion_fit: window must satisfy 0 < min < max <= L/4");
    if (parity_defect(phi, Parity::Even) > 1e-9 * (1.0 + phi.sup_norm()))
        throw std::invalid_argument("expansion_fit: phi must be even");

    std::vector<int> rows;
    for (int m = 0; m < grid->size(); ++m) {
        const double a = std::abs(grid->node(m));
        if (a >= fit_min && a <= fit_max) rows.push_back(m);
    }
    if (static_cast<int>(rows.size()) < order + 1)
        throw std::invalid_argument("expansion_fit: window contains too few nodes");

    const GridFunction rho = bo_soliton(grid);
    const GridFunction v = phi - rho;

    Eigen::MatrixXd A(rows.size(), order);
    Eigen::VectorXd b(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        const int m = rows[i];
        const double a = grid->node(m);
        const double weight = 1.0 + a * a;
        double rp = 1.0;
        for (int j = 0; j < order; ++j) {
            rp *= rho.values[m];
            A(i, j) = weight * rp;
        }
        b(i) = weight * v.values[m];
    }

    Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd coef = svd.solve(b);

    ExpansionFit fit;
    fit.order = order;
    fit.fit_min = fit_min;
    fit.fit_max = fit_max;
    fit.coefficients.assign(coef.data(), coef.data() + order);
    const double smin = svd.singularValues()(svd.singularValues().size() - 1);
    fit.condition_number = smin > 0 ? svd.singularValues()(0) / smin
                                    : std::numeric_limits<double>::infinity();

    fit.remainder_sups.resize(order, 0.0);
    for (size_t i = 0; i < rows.size(); ++i) {
        const int m = rows[i];
        const double a = grid->node(m);
        double g_m = v.values[m];
        double rp = 1.0, a2m = 1.0;
        for (int j = 0; j < order; ++j) {
            rp *= rho.values[m];
            g_m -= fit.coefficients[j] * rp;
            a2m *= a * a;
            fit.remainder_sups[j] = std::max(fit.remainder_sups[j], std::abs(a2m * g_m));
        }
    }
    return fit;
}

DecayReport decay_report(const GridFunction& v, double inner_cut) {
    const GridPtr& grid = v.grid;
    if (!(inner_cut > 0.0) || inner_cut >= grid->period() / 4.0)
        throw std::invalid_argument("decay_report: inner_cut must lie in (0, L/4)");
    DecayReport rep;
    rep.inner_cut = inner_cut;
    rep.outer_cut = grid->period() / 4.0;

    double sxx = 0, sx = 0, sy = 0, sxy = 0;
    int count = 0;
    for (int m = 0; m < grid->size(); ++m) {
        const double a = grid->node(m);
        if (a < inner_cut || a > rep.outer_cut) continue;  // positive side only; v is even
        const double va = std::abs(v.values[m]);
        rep.weighted_sup = std::max(rep.weighted_sup, a * a * va);
        if (va < 1e-300) continue;
        const double lx = std::log(a), ly = std::log(va);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++count;
    }
    // Mirror side contributes the same sup for even v; scan it anyway in case
    // the input is not tagged.
    for (int m = 0; m < grid->size(); ++m) {
        const double a = -grid->node(m);
        if (a < inner_cut || a > rep.outer_cut) continue;
        rep.weighted_sup = std::max(rep.weighted_sup, a * a * std::abs(v.values[m]));
    }
    if (count >= 2) {
        const double denom = count * sxx - sx * sx;
        rep.loglog_slope = denom != 0 ? (count * sxy - sx * sy) / denom : 0.0;
    }
    return rep;
}

}  // namespace solwave
