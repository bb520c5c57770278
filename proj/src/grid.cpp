#include "solwave/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

namespace solwave {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// The FFTW planner is not thread safe; plan creation is serialized.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwBuffer {
    double* re = nullptr;
    fftw_complex* cx = nullptr;
    FftwBuffer(int n, int nc) {
        re = fftw_alloc_real(n);
        cx = fftw_alloc_complex(nc);
    }
    ~FftwBuffer() {
        fftw_free(re);
        fftw_free(cx);
    }
};

Parity combine(Parity a, Parity b) { return a == b ? a : Parity::None; }

}  // namespace

Grid::Grid(double period_L, int size_n) : L_(period_L), n_(size_n) {
    two_pi_over_L_ = 2.0 * M_PI / L_;
    nodes_.resize(n_);
    const double h = L_ / n_;
    for (int m = 0; m < n_; ++m) nodes_[m] = -0.5 * L_ + m * h;

    // FFTW_ESTIMATE keeps planning cheap and, unlike FFTW_MEASURE, picks the
    // same algorithm on every run, which the bit-reproducibility contract of
    // the CLI relies on.
    std::lock_guard<std::mutex> lock(planner_mutex());
    FftwBuffer buf(n_, n_ / 2 + 1);
    plan_r2c_ = fftw_plan_dft_r2c_1d(n_, buf.re, buf.cx, FFTW_ESTIMATE);
    plan_c2r_ = fftw_plan_dft_c2r_1d(n_, buf.cx, buf.re, FFTW_ESTIMATE);
}

Grid::~Grid() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_r2c_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_c2r_));
}

std::shared_ptr<const Grid> Grid::create(double period_L, int size_n) {
    if (!(period_L > 0.0)) throw std::invalid_argument("grid period must be positive");
    if (!is_power_of_two(size_n) || size_n < 64)
        throw std::invalid_argument("grid size must be a power of two >= 64");
    return std::shared_ptr<const Grid>(new Grid(period_L, size_n));
}

GridPtr make_grid(double period_L, int size_n) { return Grid::create(period_L, size_n); }

std::vector<std::complex<double>> Grid::forward(const std::vector<double>& values) const {
    if (static_cast<int>(values.size()) != n_)
        throw std::invalid_argument("forward: length mismatch");
    FftwBuffer buf(n_, n_ / 2 + 1);
    for (int m = 0; m < n_; ++m) buf.re[m] = values[m];
    fftw_execute_dft_r2c(static_cast<fftw_plan>(plan_r2c_), buf.re, buf.cx);
    std::vector<std::complex<double>> out(n_ / 2 + 1);
    for (int k = 0; k <= n_ / 2; ++k) out[k] = {buf.cx[k][0], buf.cx[k][1]};
    return out;
}

std::vector<double> Grid::inverse(const std::vector<std::complex<double>>& spectrum) const {
    if (static_cast<int>(spectrum.size()) != n_ / 2 + 1)
        throw std::invalid_argument("inverse: length mismatch");
    FftwBuffer buf(n_, n_ / 2 + 1);
    for (int k = 0; k <= n_ / 2; ++k) {
        buf.cx[k][0] = spectrum[k].real();
        buf.cx[k][1] = spectrum[k].imag();
    }
    fftw_execute_dft_c2r(static_cast<fftw_plan>(plan_c2r_), buf.cx, buf.re);
    std::vector<double> out(n_);
    const double scale = 1.0 / n_;
    for (int m = 0; m < n_; ++m) out[m] = buf.re[m] * scale;
    return out;
}

GridFunction::GridFunction(GridPtr g, std::vector<double> v, Parity p)
    : grid(std::move(g)), values(std::move(v)), parity(p) {
    if (static_cast<int>(values.size()) != grid->size())
        throw std::invalid_argument("GridFunction: length mismatch");
}

GridFunction GridFunction::zero(const GridPtr& g, Parity p) {
    return GridFunction(g, std::vector<double>(g->size(), 0.0), p);
}

double GridFunction::sup_norm() const {
    double s = 0.0;
    for (double v : values) s = std::max(s, std::abs(v));
    return s;
}

double GridFunction::mean() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s / values.size();
}

bool GridFunction::finite() const {
    for (double v : values)
        if (!std::isfinite(v)) return false;
    return true;
}

void require_same_grid(const GridFunction& a, const GridFunction& b) {
    if (a.grid.get() != b.grid.get())
        throw std::invalid_argument("operands live on different grids");
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    require_same_grid(a, b);
    GridFunction out = a;
    for (int m = 0; m < out.size(); ++m) out.values[m] += b.values[m];
    out.parity = combine(a.parity, b.parity);
    return out;
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
    require_same_grid(a, b);
    GridFunction out = a;
    for (int m = 0; m < out.size(); ++m) out.values[m] -= b.values[m];
    out.parity = combine(a.parity, b.parity);
    return out;
}

GridFunction operator*(const GridFunction& a, const GridFunction& b) {
    require_same_grid(a, b);
    GridFunction out = a;
    for (int m = 0; m < out.size(); ++m) out.values[m] *= b.values[m];
    if (a.parity == Parity::None || b.parity == Parity::None)
        out.parity = Parity::None;
    else
        out.parity = (a.parity == b.parity) ? Parity::Even : Parity::Odd;
    return out;
}

GridFunction operator*(double s, const GridFunction& a) {
    GridFunction out = a;
    for (double& v : out.values) v *= s;
    return out;
}

GridFunction operator-(const GridFunction& a) { return -1.0 * a; }

GridFunction operator+(const GridFunction& a, double c) {
    GridFunction out = a;
    for (double& v : out.values) v += c;
    if (c != 0.0 && a.parity == Parity::Odd) out.parity = Parity::None;
    return out;
}

double inner_product(const GridFunction& a, const GridFunction& b) {
    require_same_grid(a, b);
    double s = 0.0;
    for (int m = 0; m < a.size(); ++m) s += a.values[m] * b.values[m];
    return s * a.grid->spacing();
}

double integral(const GridFunction& a) {
    double s = 0.0;
    for (double v : a.values) s += v;
    return s * a.grid->spacing();
}

}  // namespace solwave
