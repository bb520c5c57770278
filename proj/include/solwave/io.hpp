#pragma once

#include "solwave/continuation.hpp"
#include "solwave/expansion.hpp"
#include "solwave/fixed_point.hpp"
#include "solwave/physical.hpp"
#include "solwave/spectrum.hpp"

#include <json.hpp>

#include <string>

namespace solwave {

/// Two-column CSV (alpha,value), 17 significant digits.
void write_gridfunction_csv(const std::string& path, const GridFunction& f);

/// Profile CSV with header alpha,phi,v,U,imQ,reW,reQ. Row m pairs the
/// physical node alpha_m with the rescaled samples phi_m, v_m at the
/// corresponding rescaled node (the two grids share indexing by
/// construction).
void write_profile_csv(const std::string& path, const SolitonSolution& sol,
                       const PhysicalProfile& profile);

nlohmann::json profile_sidecar_json(const SolitonSolution& sol, const PhysicalProfile& profile,
                                    const GridPtr& rescaled_grid);

nlohmann::json spectrum_report_json(const SpectrumReport& report);

nlohmann::json branch_json(const Branch& branch);
void write_branch_csv(const std::string& path, const Branch& branch);

nlohmann::json expansion_json(double epsilon, const ExpansionFit& fit, const DecayReport& decay);

/// Exact closure coefficients {k, r: [{power, numerator, denominator}]}.
nlohmann::json modD_closure_table_json(int k_max);

void write_json(const std::string& path, const nlohmann::json& j);

}  // namespace solwave
