#pragma once

#include "solwave/grid.hpp"

namespace solwave {

/// |D|f, the Fourier multiplier |xi|. Preserves parity; annihilates the mean.
/// The unpaired Nyquist mode is retained with multiplier |xi_{n/2}|.
GridFunction apply_modD(const GridFunction& f);

/// d/d(alpha). Flips parity. The Nyquist mode is zeroed to keep the output
/// real-transform clean.
GridFunction apply_derivative(const GridFunction& f);

/// Hilbert transform, multiplier -i*sgn(xi). Flips parity; kills the mean
/// and the Nyquist mode. With this convention |D| = d/d(alpha) o H.
GridFunction hilbert(const GridFunction& f);

/// (1 + |D|)^{-1}, multiplier 1/(1 + |xi|). Preserves parity and the mean.
GridFunction solve_one_plus_modD(const GridFunction& f);

/// 1/2 (f(alpha) +/- f(-alpha)); idempotent, and the two parts sum to f.
GridFunction project_parity(const GridFunction& f, Parity parity);

/// Pointwise multiplication by the node value alpha on [-L/2, L/2).
GridFunction multiply_by_alpha(const GridFunction& f);

/// Measured parity defect: sup |f(alpha) -/+ f(-alpha)| for the given tag.
double parity_defect(const GridFunction& f, Parity parity);

}  // namespace solwave
