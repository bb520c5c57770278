#include "solwave/io.hpp"

#include "solwave/rho_algebra.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace solwave {

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::ofstream open_or_throw(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    return os;
}

}  // namespace

void write_gridfunction_csv(const std::string& path, const GridFunction& f) {
    std::ofstream os = open_or_throw(path);
    os << "alpha,value\n";
    for (int m = 0; m < f.size(); ++m)
        os << fmt17(f.grid->node(m)) << ',' << fmt17(f.values[m]) << '\n';
}

void write_profile_csv(const std::string& path, const SolitonSolution& sol,
                       const PhysicalProfile& profile) {
    std::ofstream os = open_or_throw(path);
    os << "alpha,phi,v,U,imQ,reW,reQ\n";
    const GridPtr& phys = profile.U.grid;
    for (int m = 0; m < phys->size(); ++m) {
        os << fmt17(phys->node(m)) << ',' << fmt17(sol.phi.values[m]) << ','
           << fmt17(sol.v.values[m]) << ',' << fmt17(profile.U.values[m]) << ','
           << fmt17(profile.imQ.values[m]) << ',' << fmt17(profile.reW.values[m]) << ','
           << fmt17(profile.reQ.values[m]) << '\n';
    }
}

nlohmann::json profile_sidecar_json(const SolitonSolution& sol, const PhysicalProfile& profile,
                                    const GridPtr& rescaled_grid) {
    const Admissibility adm = admissibility_check(profile);
    nlohmann::json j;
    j["epsilon"] = sol.epsilon;
    j["period_L"] = rescaled_grid->period();
    j["size_n"] = rescaled_grid->size();
    j["iterations"] = sol.iterations;
    j["rescaled_residual_sup"] = sol.rescaled_residual_sup;
    j["babenko_residual_sup"] = profile.babenko_residual_sup;
    j["x_norm_v"] = sol.x_norm_v;
    j["height_margin"] = adm.height_margin;
    j["sign_ok"] = adm.sign_ok;
    return j;
}

namespace {

std::string kind_name(OperatorKind k) {
    switch (k) {
        case OperatorKind::LRho: return "L_rho";
        case OperatorKind::LU: return "L_U";
        case OperatorKind::ConstCoeff: return "const_coeff";
    }
    return "unknown";
}

}  // namespace

nlohmann::json spectrum_report_json(const SpectrumReport& report) {
    nlohmann::json j;
    j["kind"] = kind_name(report.kind);
    j["modes"] = report.modes;
    std::vector<double> ev(report.eigenvalues.data(),
                           report.eigenvalues.data() + report.eigenvalues.size());
    j["eigenvalues"] = ev;
    j["lambda_min_nontrivial"] = report.lambda_min_nontrivial;
    j["continuous_edge"] = report.continuous_edge;
    j["height_margin"] = report.height_margin;
    j["has_discrete_eigenvalue"] = report.has_discrete_eigenvalue;
    return j;
}

nlohmann::json branch_json(const Branch& branch) {
    nlohmann::json j;
    j["g"] = branch.g;
    j["gamma"] = branch.gamma;
    j["stop_reason"] = to_string(branch.stop_reason);
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : branch.points) {
        nlohmann::json q;
        q["c"] = p.c;
        q["epsilon"] = p.epsilon;
        q["sup_U"] = p.sup_U;
        q["x_norm"] = p.x_norm;
        q["residual"] = p.babenko_residual_sup;
        q["lambda_min"] = p.lambda_min;
        q["height_margin"] = p.height_margin;
        q["step_used"] = p.step_used;
        pts.push_back(q);
    }
    j["points"] = pts;
    return j;
}

void write_branch_csv(const std::string& path, const Branch& branch) {
    std::ofstream os = open_or_throw(path);
    os << "c,sup_U,lambda_min,height_margin\n";
    for (const auto& p : branch.points)
        os << fmt17(p.c) << ',' << fmt17(p.sup_U) << ',' << fmt17(p.lambda_min) << ','
           << fmt17(p.height_margin) << '\n';
}

nlohmann::json expansion_json(double epsilon, const ExpansionFit& fit, const DecayReport& decay) {
    nlohmann::json j;
    j["epsilon"] = epsilon;
    j["N"] = fit.order;
    j["a"] = fit.coefficients;
    j["remainder_sups"] = fit.remainder_sups;
    j["condition_number"] = fit.condition_number;
    j["fit_min"] = fit.fit_min;
    j["fit_max"] = fit.fit_max;
    j["decay_weighted_sup"] = decay.weighted_sup;
    j["decay_loglog_slope"] = decay.loglog_slope;
    return j;
}

nlohmann::json modD_closure_table_json(int k_max) {
    nlohmann::json arr = nlohmann::json::array();
    for (int k = 1; k <= k_max; ++k) {
        const RhoPolynomial poly = modD_rho_power_coeffs(k);
        nlohmann::json entry;
        entry["k"] = k;
        nlohmann::json r = nlohmann::json::array();
        for (const auto& [power, coeff] : poly.coeffs) {
            nlohmann::json term;
            term["power"] = power;
            std::ostringstream num, den;
            num << boost::multiprecision::numerator(coeff);
            den << boost::multiprecision::denominator(coeff);
            term["numerator"] = num.str();
            term["denominator"] = den.str();
            r.push_back(term);
        }
        entry["r"] = r;
        arr.push_back(entry);
    }
    return arr;
}

void write_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream os = open_or_throw(path);
    os << j.dump(2) << '\n';
}

}  // namespace solwave
