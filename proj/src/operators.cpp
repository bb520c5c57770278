#include "solwave/operators.hpp"

#include <cmath>

namespace solwave {

namespace {

Parity flip(Parity p) {
    if (p == Parity::Even) return Parity::Odd;
    if (p == Parity::Odd) return Parity::Even;
    return Parity::None;
}

}  // namespace

GridFunction apply_modD(const GridFunction& f) {
    auto spec = f.grid->forward(f.values);
    const int nh = f.grid->size() / 2;
    for (int k = 0; k <= nh; ++k) spec[k] *= f.grid->wavenumber(k);
    return GridFunction(f.grid, f.grid->inverse(spec), f.parity);
}

GridFunction apply_derivative(const GridFunction& f) {
    auto spec = f.grid->forward(f.values);
    const int nh = f.grid->size() / 2;
    for (int k = 0; k < nh; ++k) spec[k] *= std::complex<double>(0.0, f.grid->wavenumber(k));
    spec[nh] = 0.0;
    return GridFunction(f.grid, f.grid->inverse(spec), flip(f.parity));
}

GridFunction hilbert(const GridFunction& f) {
    auto spec = f.grid->forward(f.values);
    const int nh = f.grid->size() / 2;
    spec[0] = 0.0;
    const std::complex<double> minus_i(0.0, -1.0);
    for (int k = 1; k < nh; ++k) spec[k] *= minus_i;
    spec[nh] = 0.0;
    return GridFunction(f.grid, f.grid->inverse(spec), flip(f.parity));
}

GridFunction solve_one_plus_modD(const GridFunction& f) {
    auto spec = f.grid->forward(f.values);
    const int nh = f.grid->size() / 2;
    for (int k = 0; k <= nh; ++k) spec[k] /= 1.0 + f.grid->wavenumber(k);
    return GridFunction(f.grid, f.grid->inverse(spec), f.parity);
}

GridFunction project_parity(const GridFunction& f, Parity parity) {
    if (parity == Parity::None) throw std::invalid_argument("project_parity: Even or Odd required");
    const int n = f.grid->size();
    std::vector<double> out(n);
    const double sign = (parity == Parity::Even) ? 1.0 : -1.0;
    for (int m = 0; m < n; ++m) out[m] = 0.5 * (f.values[m] + sign * f.values[f.grid->reflect(m)]);
    return GridFunction(f.grid, std::move(out), parity);
}

GridFunction multiply_by_alpha(const GridFunction& f) {
    GridFunction out = f;
    for (int m = 0; m < out.size(); ++m) out.values[m] *= f.grid->node(m);
    out.parity = flip(f.parity);
    return out;
}

double parity_defect(const GridFunction& f, Parity parity) {
    if (parity == Parity::None) return 0.0;
    const double sign = (parity == Parity::Even) ? 1.0 : -1.0;
    double d = 0.0;
    for (int m = 0; m < f.size(); ++m)
        d = std::max(d, std::abs(f.values[m] - sign * f.values[f.grid->reflect(m)]));
    return d;
}

}  // namespace solwave
