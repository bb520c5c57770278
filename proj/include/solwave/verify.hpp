#pragma once

#include "solwave/grid.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace solwave {

struct VerifyCheck {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct VerifyReport {
    double period_L = 0.0;
    int size_n = 0;
    double truncation_floor = 0.0;
    std::vector<VerifyCheck> checks;

    bool all_pass() const;
    nlohmann::json to_json() const;
};

/// The identity suite: soliton equation and its refinement behavior, the
/// Hilbert transform of the soliton against its closed form, the
/// multiplication/|D| commutator against -H, the |D| rho^k closure for
/// k <= 5, and the even/full spectrum of the soliton linearization.
/// Thresholds of the identities dominated by domain truncation scale with
/// the grid; the rest are fixed.
VerifyReport run_verify(double period_L, int size_n);

void print_verify_table(const VerifyReport& report);

}  // namespace solwave
