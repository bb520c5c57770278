#include "solwave/norms.hpp"

#include "solwave/operators.hpp"

#include <cmath>

namespace solwave {

namespace {

double sobolev_norm_sq(const GridFunction& f, int k) {
    if (k < 0 || k > 4) throw std::invalid_argument("sobolev_norm: order must be in [0,4]");
    const auto spec = f.grid->forward(f.values);
    const int nh = f.grid->size() / 2;
    double acc = 0.0;
    for (int j = 0; j <= nh; ++j) {
        const double xi = f.grid->wavenumber(j);
        double w = 1.0;
        const double base = 1.0 + xi * xi;
        for (int p = 0; p < k; ++p) w *= base;
        const double weight = (j == 0 || j == nh) ? 1.0 : 2.0;  // conjugate pairs
        acc += weight * w * std::norm(spec[j]);
    }
    const double n = f.grid->size();
    return acc * f.grid->period() / (n * n);
}

}  // namespace

double sobolev_norm(const GridFunction& f, int k) { return std::sqrt(sobolev_norm_sq(f, k)); }

double l2_norm(const GridFunction& f) { return std::sqrt(sobolev_norm_sq(f, 0)); }

double x_norm(const GridFunction& f, double eta) {
    const double a = sobolev_norm_sq(f, 2);
    const double b = sobolev_norm_sq(multiply_by_alpha(f), 2);
    return std::sqrt(a + eta * eta * b);
}

double norm(const GridFunction& f, const NormSpec& spec) {
    switch (spec.kind) {
        case NormKind::Hk:
            return sobolev_norm(f, spec.k);
        case NormKind::HkSigma: {
            if (spec.sigma < 0 || spec.sigma % 2 != 0)
                throw std::invalid_argument("norm: sigma must be a nonnegative even integer");
            GridFunction g = f;
            for (int m = 0; m < g.size(); ++m) {
                const double a = g.grid->node(m);
                double w = 1.0;
                const double base = 1.0 + a * a;
                for (int p = 0; p < spec.sigma / 2; ++p) w *= base;
                g.values[m] *= w;
            }
            return sobolev_norm(g, spec.k);
        }
        case NormKind::X:
            if (!(spec.eta > 0.0)) throw std::invalid_argument("norm: eta must be positive");
            return x_norm(f, spec.eta);
    }
    throw std::logic_error("norm: unreachable");
}

}  // namespace solwave
