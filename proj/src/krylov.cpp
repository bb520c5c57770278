#include "solwave/krylov.hpp"

#include <cmath>
#include <cstdio>

namespace solwave {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double nrm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void axpy(double c, const std::vector<double>& x, std::vector<double>& y) {
    for (size_t i = 0; i < y.size(); ++i) y[i] += c * x[i];
}

// One restart-free sweep solving A x = b from x = 0, stopping when the
// preconditioned residual falls below sweep_tol * ||M b||.
std::vector<double> gmres_sweep(const VecOp& apply, const VecOp& precondition,
                                const std::vector<double>& rhs, double sweep_tol, int mmax,
                                int* used) {
    std::vector<double> x(rhs.size(), 0.0);
    std::vector<double> r0 = precondition(rhs);
    const double beta = nrm2(r0);
    *used = 0;
    if (beta == 0.0) return x;

    std::vector<std::vector<double>> basis;
    basis.reserve(mmax + 1);
    for (double& t : r0) t /= beta;
    basis.push_back(std::move(r0));

    std::vector<std::vector<double>> hcols;  // post-rotation columns, j+1 entries
    std::vector<double> cs(mmax), sn(mmax), g(mmax + 1, 0.0);
    g[0] = beta;
    double hscale = 0.0;

    int m = 0;
    for (int j = 0; j < mmax; ++j) {
        std::vector<double> w = precondition(apply(basis[j]));
        std::vector<double> h(j + 2, 0.0);
        for (int i = 0; i <= j; ++i) {
            h[i] = dot(w, basis[i]);
            axpy(-h[i], basis[i], w);
        }
        h[j + 1] = nrm2(w);
        for (int i = 0; i <= j + 1; ++i) hscale = std::max(hscale, std::abs(h[i]));
        const bool breakdown = (h[j + 1] <= 1e-13 * hscale);
        if (!breakdown) {
            std::vector<double> v = w;
            for (double& t : v) t /= h[j + 1];
            basis.push_back(std::move(v));
        }

        for (int i = 0; i < j; ++i) {
            const double t = cs[i] * h[i] + sn[i] * h[i + 1];
            h[i + 1] = -sn[i] * h[i] + cs[i] * h[i + 1];
            h[i] = t;
        }
        const double denom = std::hypot(h[j], h[j + 1]);
        cs[j] = h[j] / denom;
        sn[j] = h[j + 1] / denom;
        h[j] = denom;
        h.pop_back();
        hcols.push_back(std::move(h));
        g[j + 1] = -sn[j] * g[j];
        g[j] = cs[j] * g[j];

        m = j + 1;
        if (std::abs(g[j + 1]) / beta <= sweep_tol || breakdown) break;
    }

    std::vector<double> y(m, 0.0);
    for (int i = m - 1; i >= 0; --i) {
        double s = g[i];
        for (int k = i + 1; k < m; ++k) s -= hcols[k][i] * y[k];
        y[i] = s / hcols[i][i];
    }
    for (int i = 0; i < m; ++i) axpy(y[i], basis[i], x);
    *used = m;
    return x;
}

}  // namespace

GmresResult gmres(const VecOp& apply, const VecOp& precondition, const std::vector<double>& rhs,
                  double rel_tolerance, int max_iterations) {
    const size_t n = rhs.size();
    const double bnorm = nrm2(rhs);
    GmresResult result;
    result.x.assign(n, 0.0);
    if (bnorm == 0.0) return result;

    // Convergence is judged on the true residual; the preconditioned sweep
    // tolerance only steers each restart cycle.
    std::vector<double> resid = rhs;
    double rel = 1.0;
    int total = 0;
    for (int cycle = 0; cycle < 4 && total < max_iterations; ++cycle) {
        int used = 0;
        std::vector<double> dx = gmres_sweep(apply, precondition, resid, 0.05 * rel_tolerance,
                                             max_iterations - total, &used);
        total += std::max(used, 1);
        axpy(1.0, dx, result.x);
        std::vector<double> ax = apply(result.x);
        for (size_t i = 0; i < n; ++i) resid[i] = rhs[i] - ax[i];
        rel = nrm2(resid) / bnorm;
        if (rel <= rel_tolerance) break;
    }

    result.relative_residual = rel;
    result.iterations = total;
    if (rel > rel_tolerance) {
        char msg[128];
        std::snprintf(msg, sizeof msg, "gmres failed to converge: relative residual %.3e after %d iterations",
                      rel, total);
        throw SolveFailure(msg);
    }
    return result;
}

}  // namespace solwave
