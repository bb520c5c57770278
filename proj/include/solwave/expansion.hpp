#pragma once

#include "solwave/grid.hpp"

#include <vector>

namespace solwave {

struct ExpansionFit {
    int order = 0;
    std::vector<double> coefficients;    // a_1 .. a_N
    std::vector<double> remainder_sups;  // sup |alpha^{2m} g_m| over the window, m = 1..N
    double condition_number = 0.0;
    double fit_min = 0.0;
    double fit_max = 0.0;
};

/// Weighted least-squares fit of phi - rho against {rho^j, j = 1..N} over
/// fit_min <= |alpha| <= fit_max, each row scaled by (1 + alpha^2). The
/// condition number of the scaled design matrix is reported so collinearity
/// of the rho powers on narrow windows is visible.
ExpansionFit expansion_fit(const GridFunction& phi, int order, double fit_min, double fit_max);

struct DecayReport {
    double weighted_sup = 0.0;  // sup of alpha^2 |v| over [inner_cut, L/4]
    double loglog_slope = 0.0;  // slope of log|v| against log|alpha| there
    double inner_cut = 0.0;
    double outer_cut = 0.0;
};

DecayReport decay_report(const GridFunction& v, double inner_cut);

}  // namespace solwave
