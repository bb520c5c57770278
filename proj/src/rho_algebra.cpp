#include "solwave/rho_algebra.hpp"

#include <utility>

namespace solwave {

namespace {

void add_term(std::map<int, ComplexRational>& dst, int order, const ComplexRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = dst.emplace(order, c);
    if (!inserted) {
        it->second = it->second + c;
        if (it->second.is_zero()) dst.erase(it);
    }
}

// Pure products a^m b^k with a = (alpha-i)^{-1}, b = (alpha+i)^{-1} reduce via
// a*b = (a - b)/(2i), i.e. a^m b^k = (1/(2i)) (a^m b^{k-1} - a^{m-1} b^k).
const PartialFractionForm& mixed_power(int m, int k) {
    static std::map<std::pair<int, int>, PartialFractionForm> cache;
    auto key = std::make_pair(m, k);
    auto hit = cache.find(key);
    if (hit != cache.end()) return hit->second;

    PartialFractionForm f;
    if (m == 0 && k == 0) {
        // The constant 1; never reached from admissible calls.
        throw std::logic_error("mixed_power: constant term");
    } else if (k == 0) {
        add_term(f.pole_minus_i, m, {1, 0});
    } else if (m == 0) {
        add_term(f.pole_plus_i, k, {1, 0});
    } else {
        const ComplexRational inv_2i{0, Rational(-1, 2)};  // 1/(2i) = -i/2
        f = (mixed_power(m, k - 1) - mixed_power(m - 1, k)).scaled(inv_2i);
    }
    return cache.emplace(key, std::move(f)).first->second;
}

Rational binomial(int n, int k) {
    Rational r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

ComplexRational ipow(const ComplexRational& z, int p) {
    ComplexRational r{1, 0};
    for (int i = 0; i < p; ++i) r = r * z;
    return r;
}

}  // namespace

int PartialFractionForm::max_order() const {
    int m = 0;
    if (!pole_minus_i.empty()) m = std::max(m, pole_minus_i.rbegin()->first);
    if (!pole_plus_i.empty()) m = std::max(m, pole_plus_i.rbegin()->first);
    return m;
}

bool PartialFractionForm::represents_real_function() const {
    if (pole_minus_i.size() != pole_plus_i.size()) return false;
    for (const auto& [j, beta] : pole_minus_i) {
        auto it = pole_plus_i.find(j);
        if (it == pole_plus_i.end() || !(it->second == beta.conj())) return false;
    }
    return true;
}

Rational PartialFractionForm::evaluate(const Rational& alpha) const {
    // (alpha -/+ i)^{-1} = (alpha +/- i) / (alpha^2 + 1)
    const Rational d = alpha * alpha + 1;
    const ComplexRational inv_minus{alpha / d, Rational(1) / d};
    const ComplexRational inv_plus{alpha / d, Rational(-1) / d};
    ComplexRational acc{0, 0};
    for (const auto& [j, c] : pole_minus_i) acc = acc + c * ipow(inv_minus, j);
    for (const auto& [j, c] : pole_plus_i) acc = acc + c * ipow(inv_plus, j);
    if (acc.im != 0) throw std::logic_error("PartialFractionForm: non-real evaluation");
    return acc.re;
}

double PartialFractionForm::evaluate_double(double alpha) const {
    return static_cast<double>(evaluate(Rational(alpha)));
}

PartialFractionForm PartialFractionForm::hilbert() const {
    PartialFractionForm out;
    const ComplexRational plus_i{0, 1}, minus_i{0, -1};
    for (const auto& [j, c] : pole_minus_i) add_term(out.pole_minus_i, j, c * plus_i);
    for (const auto& [j, c] : pole_plus_i) add_term(out.pole_plus_i, j, c * minus_i);
    return out;
}

PartialFractionForm PartialFractionForm::derivative() const {
    PartialFractionForm out;
    for (const auto& [j, c] : pole_minus_i)
        add_term(out.pole_minus_i, j + 1, {c.re * -j, c.im * -j});
    for (const auto& [j, c] : pole_plus_i)
        add_term(out.pole_plus_i, j + 1, {c.re * -j, c.im * -j});
    return out;
}

PartialFractionForm operator+(const PartialFractionForm& a, const PartialFractionForm& b) {
    PartialFractionForm out = a;
    for (const auto& [j, c] : b.pole_minus_i) add_term(out.pole_minus_i, j, c);
    for (const auto& [j, c] : b.pole_plus_i) add_term(out.pole_plus_i, j, c);
    return out;
}

PartialFractionForm operator-(const PartialFractionForm& a, const PartialFractionForm& b) {
    return a + b.scaled({-1, 0});
}

PartialFractionForm PartialFractionForm::scaled(const ComplexRational& c) const {
    PartialFractionForm out;
    for (const auto& [j, v] : pole_minus_i) add_term(out.pole_minus_i, j, v * c);
    for (const auto& [j, v] : pole_plus_i) add_term(out.pole_plus_i, j, v * c);
    return out;
}

PartialFractionForm rho_power_partial_fractions(int ell) {
    if (ell < 1 || ell > 12)
        throw std::invalid_argument("rho_power_partial_fractions: ell must be in [1, 12]");
    // rho = -2i (alpha-i)^{-1} + 2i (alpha+i)^{-1}
    const ComplexRational beta1{0, -2}, gamma1{0, 2};
    PartialFractionForm out;
    for (int m = 0; m <= ell; ++m) {
        const ComplexRational coeff =
            ComplexRational{binomial(ell, m), 0} * ipow(beta1, m) * ipow(gamma1, ell - m);
        if (m == 0) {
            add_term(out.pole_plus_i, ell, coeff);
        } else if (m == ell) {
            add_term(out.pole_minus_i, ell, coeff);
        } else {
            const PartialFractionForm& mix = mixed_power(m, ell - m);
            out = out + mix.scaled(coeff);
        }
    }
    return out;
}

RhoPolynomial RhoPolynomial::monomial(int power, const Rational& c) {
    RhoPolynomial p;
    if (c != 0) p.coeffs[power] = c;
    return p;
}

bool RhoPolynomial::is_zero() const { return coeffs.empty(); }

int RhoPolynomial::degree() const { return coeffs.empty() ? 0 : coeffs.rbegin()->first; }

Rational RhoPolynomial::coeff(int power) const {
    auto it = coeffs.find(power);
    return it == coeffs.end() ? Rational(0) : it->second;
}

PartialFractionForm RhoPolynomial::to_partial_fractions() const {
    PartialFractionForm out;
    for (const auto& [p, c] : coeffs)
        out = out + rho_power_partial_fractions(p).scaled({c, 0});
    return out;
}

GridFunction RhoPolynomial::evaluate(const GridPtr& grid) const {
    return GridFunction::sample(
        grid, [this](double a) { return evaluate_at(a); }, Parity::Even);
}

double RhoPolynomial::evaluate_at(double alpha) const {
    const double rho = 4.0 / (1.0 + alpha * alpha);
    double acc = 0.0;
    // Horner over the (possibly sparse) powers, highest first.
    int prev = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        if (prev != 0)
            for (int p = prev; p > it->first; --p) acc *= rho;
        acc += static_cast<double>(it->second);
        prev = it->first;
    }
    for (int p = prev; p > 0; --p) acc *= rho;
    return acc;
}

RhoPolynomial operator+(const RhoPolynomial& a, const RhoPolynomial& b) {
    RhoPolynomial out = a;
    for (const auto& [p, c] : b.coeffs) {
        auto [it, inserted] = out.coeffs.emplace(p, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) out.coeffs.erase(it);
        }
    }
    return out;
}

RhoPolynomial operator-(const RhoPolynomial& a, const RhoPolynomial& b) {
    RhoPolynomial neg;
    for (const auto& [p, c] : b.coeffs) neg.coeffs[p] = -c;
    return a + neg;
}

RhoPolynomial operator*(const RhoPolynomial& a, const RhoPolynomial& b) {
    RhoPolynomial out;
    for (const auto& [pa, ca] : a.coeffs)
        for (const auto& [pb, cb] : b.coeffs) {
            auto [it, inserted] = out.coeffs.emplace(pa + pb, ca * cb);
            if (!inserted) {
                it->second += ca * cb;
                if (it->second == 0) out.coeffs.erase(it);
            }
        }
    return out;
}

bool operator==(const RhoPolynomial& a, const RhoPolynomial& b) { return a.coeffs == b.coeffs; }

RhoPolynomial RhoPolynomial::apply_modD() const {
    RhoPolynomial out;
    for (const auto& [p, c] : coeffs) {
        RhoPolynomial term = modD_rho_power_coeffs(p);
        for (auto& [q, r] : term.coeffs) r *= c;
        out = out + term;
    }
    return out;
}

RhoPolynomial partial_fractions_to_rho_polynomial(const PartialFractionForm& form) {
    PartialFractionForm rest = form;
    RhoPolynomial poly;
    for (int ell = rest.max_order(); ell >= 1; --ell) {
        auto it = rest.pole_minus_i.find(ell);
        if (it == rest.pole_minus_i.end()) continue;
        const PartialFractionForm basis = rho_power_partial_fractions(ell);
        const ComplexRational lead = basis.pole_minus_i.at(ell);
        const ComplexRational r = it->second / lead;
        if (r.im != 0)
            throw std::logic_error("partial_fractions_to_rho_polynomial: non-real coefficient");
        poly.coeffs[ell] = r.re;
        rest = rest - basis.scaled(r);
    }
    if (!rest.pole_minus_i.empty() || !rest.pole_plus_i.empty())
        throw std::logic_error("partial_fractions_to_rho_polynomial: form outside the rho span");
    return poly;
}

RhoPolynomial modD_rho_power_coeffs(int k) {
    if (k < 1 || k > 10) throw std::invalid_argument("modD_rho_power_coeffs: k must be in [1, 10]");
    return partial_fractions_to_rho_polynomial(rho_power_partial_fractions(k).modD());
}

}  // namespace solwave
