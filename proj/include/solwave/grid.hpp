#pragma once

#include <complex>
#include <memory>
#include <stdexcept>
#include <vector>

namespace solwave {

enum class Parity { Even, Odd, None };

/// Uniform periodic grid on [-L/2, L/2) with cached FFTW plans.
///
/// Nodes are alpha_m = -L/2 + m*L/n, so the node with index n/2 sits at
/// alpha = 0 and reflection alpha -> -alpha maps index m to (n - m) mod n.
/// The half-spectrum wavenumbers are xi_k = 2*pi*k/L for k = 0..n/2.
///
/// Grids are immutable. Transforms go through FFTW's new-array execute
/// interface on per-call buffers, so independent operations may use the
/// same Grid from several threads.
class Grid : public std::enable_shared_from_this<Grid> {
  public:
    static std::shared_ptr<const Grid> create(double period_L, int size_n);
    ~Grid();

    Grid(const Grid&) = delete;
    Grid& operator=(const Grid&) = delete;

    double period() const { return L_; }
    int size() const { return n_; }
    double spacing() const { return L_ / n_; }
    const std::vector<double>& nodes() const { return nodes_; }
    double node(int m) const { return nodes_[m]; }

    /// Number of retained half-spectrum coefficients, n/2 + 1.
    int spectrum_size() const { return n_ / 2 + 1; }
    /// xi_k = 2*pi*k/L for k = 0..n/2.
    double wavenumber(int k) const { return two_pi_over_L_ * k; }

    std::vector<std::complex<double>> forward(const std::vector<double>& values) const;
    std::vector<double> inverse(const std::vector<std::complex<double>>& spectrum) const;

    /// Index of the reflected node, f(-alpha_m) = f[reflect(m)].
    int reflect(int m) const { return m == 0 ? 0 : n_ - m; }

  private:
    Grid(double period_L, int size_n);

    double L_;
    int n_;
    double two_pi_over_L_;
    std::vector<double> nodes_;
    void* plan_r2c_;  // fftw_plan, kept opaque to avoid leaking fftw3.h
    void* plan_c2r_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(double period_L, int size_n);

/// Real sampled function on a Grid with an optional parity tag.
struct GridFunction {
    GridPtr grid;
    std::vector<double> values;
    Parity parity = Parity::None;

    GridFunction() = default;
    GridFunction(GridPtr g, std::vector<double> v, Parity p = Parity::None);

    static GridFunction zero(const GridPtr& g, Parity p = Parity::Even);

    /// Sample a callable at every node.
    template <typename F>
    static GridFunction sample(const GridPtr& g, F&& f, Parity p = Parity::None) {
        std::vector<double> v(g->size());
        for (int m = 0; m < g->size(); ++m) v[m] = f(g->node(m));
        return GridFunction(g, std::move(v), p);
    }

    int size() const { return static_cast<int>(values.size()); }
    double operator[](int m) const { return values[m]; }
    double& operator[](int m) { return values[m]; }

    double sup_norm() const;
    double mean() const;
    bool finite() const;
};

// Pointwise arithmetic. Parity tags combine in the obvious way and fall
// back to None when the operands disagree.
GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(const GridFunction& a, const GridFunction& b);
GridFunction operator*(double s, const GridFunction& a);
GridFunction operator-(const GridFunction& a);
GridFunction operator+(const GridFunction& a, double c);

/// Quadrature inner product h * sum(f_m * g_m); spectrally accurate for
/// periodic integrands.
double inner_product(const GridFunction& a, const GridFunction& b);
/// h * sum(f_m).
double integral(const GridFunction& a);

void require_same_grid(const GridFunction& a, const GridFunction& b);

}  // namespace solwave
