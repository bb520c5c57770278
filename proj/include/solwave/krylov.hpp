#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace solwave {

struct SolveFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using VecOp = std::function<std::vector<double>(const std::vector<double>&)>;

struct GmresResult {
    std::vector<double> x;
    double relative_residual = 0.0;
    int iterations = 0;
};

/// Restart-free GMRES with left preconditioning and modified Gram-Schmidt.
/// Solves A x = b to ||b - A x|| <= rel_tolerance * ||b|| in the plain l2
/// norm (the quadrature weight cancels from relative residuals). Throws
/// SolveFailure when the Krylov space is exhausted before the tolerance is
/// met, which in this code base signals a near-singular operator.
GmresResult gmres(const VecOp& apply, const VecOp& precondition, const std::vector<double>& rhs,
                  double rel_tolerance, int max_iterations);

}  // namespace solwave
