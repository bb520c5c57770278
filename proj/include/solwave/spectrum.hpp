#pragma once

#include "solwave/grid.hpp"
#include "solwave/physical.hpp"

#include <Eigen/Dense>

namespace solwave {

enum class OperatorKind { LRho, LU, ConstCoeff };
enum class BasisKind { EvenCosine, Full };

/// The linearization of the steady profile equation around U,
///   L_U w = (g + c*gamma + gamma^2 U) w - c^2 |D| w
///         + g ( U |D|w + |D|U w + |D|(U w) )
///         - gamma^2/2 ( 2U |D|(Uw) + w |D|U^2 - U^2 |D|w - 2Uw |D|U - |D|(U^2 w) ).
/// Self-adjoint with respect to the grid inner product.
GridFunction apply_babenko_linearization(const PhysicalParams& params, const GridFunction& U,
                                         const GridFunction& w);

/// Orthonormal trigonometric basis function j on the grid. EvenCosine packs
/// [1, cos_1, cos_2, ...]; Full interleaves [1, cos_1, sin_1, cos_2, ...].
GridFunction basis_function(const GridPtr& grid, BasisKind basis, int j);

/// Coefficients <f, e_i> for i < modes via one transform pass.
Eigen::VectorXd basis_coefficients(const GridFunction& f, BasisKind basis, int modes);

struct OperatorMatrix {
    OperatorKind kind = OperatorKind::LRho;
    BasisKind basis = BasisKind::EvenCosine;
    int modes = 0;
    Eigen::MatrixXd entries;      // symmetrized
    double pre_symmetrization_asymmetry = 0.0;  // max |A - A^T| before symmetrizing
    GridPtr grid;
    PhysicalParams params;        // meaningful for kind == LU
};

/// Column j holds the basis coefficients of the operator applied to basis
/// function j. For kind LU the profile supplies (U, params); LRho and
/// ConstCoeff sample rho on the given grid.
OperatorMatrix assemble_operator_matrix(OperatorKind kind, BasisKind basis, int modes,
                                        const GridPtr& grid,
                                        const PhysicalProfile* profile = nullptr);

struct SpectrumReport {
    OperatorKind kind = OperatorKind::LRho;
    BasisKind basis = BasisKind::EvenCosine;
    int modes = 0;
    Eigen::VectorXd eigenvalues;   // ascending
    Eigen::MatrixXd eigenvectors;  // matching columns, basis coefficients
    double continuous_edge = 0.0;  // -1 for L_rho; g + c*gamma for L_U
    double lambda_min_nontrivial = 0.0;
    bool has_discrete_eigenvalue = false;
    int translational_index = -1;  // full-basis zero mode, -1 if absent
    double translational_similarity = 0.0;
    double height_margin = 0.0;    // for kind LU
};

/// Dense symmetric eigendecomposition plus classification: eigenvalues within
/// a 5% band of the continuous-spectrum edge are treated as discretized
/// continuum; the translational zero mode is identified by correlating
/// eigenvectors against the derivative of the underlying profile.
SpectrumReport eig_sym(const OperatorMatrix& matrix, const PhysicalProfile* profile = nullptr);

struct SpectrumDiagnostics {
    double lambda_min_nontrivial = 0.0;
    double height_margin = 0.0;
    double x_norm = 0.0;
    double continuous_edge = 0.0;
    bool has_discrete_eigenvalue = false;
};

/// The quantities controlling a continuation step around the profile.
SpectrumDiagnostics spectrum_diagnostics(const SpectrumReport& report,
                                         const PhysicalProfile& profile, double eta = 0.1);

/// Smallest-|lambda| eigenvalue of L_U on the even subspace by inverse
/// iteration; matrix-free alternative to the dense path, used by branch
/// tracing.
double smallest_even_eigenvalue(const PhysicalProfile& profile, double tolerance = 1e-8,
                                int max_iterations = 60);

/// Restrict to the centered subinterval of length period/2^crop using every
/// node that falls inside it (an exact node subset, no interpolation).
GridFunction crop_centered(const GridFunction& f, int crop);

}  // namespace solwave
