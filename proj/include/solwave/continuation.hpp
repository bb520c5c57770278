#pragma once

#include "solwave/fixed_point.hpp"
#include "solwave/physical.hpp"

#include <string>
#include <vector>

namespace solwave {

enum class StopReason {
    ReachedTarget,
    IntervalInfiniteCap,
    NormBlowup,
    HeightMarginCollapse,
    EigenvalueCollapse,
    StepUnderflow,
};

std::string to_string(StopReason r);

struct BranchPoint {
    double c = 0.0;
    double epsilon = 0.0;  // |g + c*gamma| / gamma^2
    double sup_U = 0.0;
    double x_norm = 0.0;
    double babenko_residual_sup = 0.0;
    double lambda_min = 0.0;       // smallest-|.| even eigenvalue of L_U
    double height_margin = 0.0;
    double step_used = 0.0;        // velocity increment that produced this point
};

struct Branch {
    double g = 1.0;
    double gamma = -1.0;
    std::vector<BranchPoint> points;
    StopReason stop_reason = StopReason::ReachedTarget;

    bool reached_target() const { return stop_reason == StopReason::ReachedTarget; }
};

struct ContinuationControls {
    SolverOptions solver;
    double safety = 0.5;       // step fraction of the binding margin
    double s1 = 0.5;           // height-margin weight in the step law
    double s2 = 1.0;           // eigenvalue weight
    double s3 = 30.0;          // X-norm weight
    double min_step = 1e-6;
    double velocity_cap_factor = 100.0;  // stop when |c| > factor * g/|gamma|
    double margin_floor_rel = 0.02;      // of c^2/(2g)
    double lambda_floor_rel = 0.05;      // of |g + c*gamma|
    double xnorm_blowup_factor = 50.0;   // of the starting X-norm
    int max_points = 500;
    int max_step_retries = 6;
    bool newton_polish = false;  // optional one-step correction, off by default
};

/// Quadratic-and-higher terms in w of the difference of the two profile
/// equations at a fixed velocity; assembled from the explicit formulas and
/// unit-tested against finite differences of the residual.
GridFunction continuation_nonlinearity(const PhysicalParams& params, const GridFunction& U1,
                                       const GridFunction& w);

/// One velocity step: solves
///   L_{U1} w = -(c2-c1)(gamma - (c2+c1)|D|)(U1+w) + N(w, U1)
/// by the even-subspace fixed point from w = 0 and returns the profile at
/// velocity c2 with an independently evaluated residual.
PhysicalProfile continuation_step(const PhysicalProfile& U1, double c2,
                                  const ContinuationControls& controls = {});

/// Trace the branch from a converged admissible start toward c_target with
/// the adaptive step dc = safety * min(margin*s1, |lambda|*s2, s3/||U||_X),
/// recomputing the controlling spectrum at every accepted point. Every
/// termination is a classified stop reason, never an exception.
Branch trace_branch(const PhysicalProfile& start, double c_target,
                    const ContinuationControls& controls = {});

}  // namespace solwave
