#pragma once

#include "solwave/grid.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <map>

namespace solwave {

using Rational = boost::multiprecision::cpp_rational;

struct ComplexRational {
    Rational re = 0;
    Rational im = 0;

    bool is_zero() const { return re == 0 && im == 0; }
    ComplexRational conj() const { return {re, -im}; }

    friend ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend ComplexRational operator/(const ComplexRational& a, const ComplexRational& b) {
        const Rational d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
        return a.re == b.re && a.im == b.im;
    }
};

/// Exact decomposition sum_j beta_j (alpha - i)^{-j} + gamma_j (alpha + i)^{-j}.
/// Realness of the represented function is equivalent to gamma_j = conj(beta_j).
struct PartialFractionForm {
    std::map<int, ComplexRational> pole_minus_i;  // beta_j
    std::map<int, ComplexRational> pole_plus_i;   // gamma_j

    int max_order() const;
    bool represents_real_function() const;

    /// Exact evaluation at a real rational point (the imaginary parts must
    /// cancel; throws if they do not).
    Rational evaluate(const Rational& alpha) const;
    double evaluate_double(double alpha) const;

    /// Hilbert transform applied termwise: (alpha-i)^{-j} are negative-
    /// frequency boundary values, so with the -i*sgn(xi) convention
    /// H (alpha-i)^{-j} = +i (alpha-i)^{-j} and H (alpha+i)^{-j} = -i (...).
    PartialFractionForm hilbert() const;
    PartialFractionForm derivative() const;
    PartialFractionForm modD() const { return hilbert().derivative(); }

    friend PartialFractionForm operator+(const PartialFractionForm& a, const PartialFractionForm& b);
    friend PartialFractionForm operator-(const PartialFractionForm& a, const PartialFractionForm& b);
    PartialFractionForm scaled(const ComplexRational& c) const;
};

/// Exact partial fractions of rho^ell, rho = 4/(1+alpha^2), for 1 <= ell <= 12.
PartialFractionForm rho_power_partial_fractions(int ell);

/// Finitely supported polynomial sum_j c_j rho^j with exact coefficients,
/// closed under addition, multiplication and |D|.
struct RhoPolynomial {
    std::map<int, Rational> coeffs;  // power >= 1 -> coefficient

    static RhoPolynomial monomial(int power, const Rational& c = 1);

    bool is_zero() const;
    int degree() const;
    Rational coeff(int power) const;

    PartialFractionForm to_partial_fractions() const;
    GridFunction evaluate(const GridPtr& grid) const;
    double evaluate_at(double alpha) const;

    RhoPolynomial apply_modD() const;

    friend RhoPolynomial operator+(const RhoPolynomial& a, const RhoPolynomial& b);
    friend RhoPolynomial operator-(const RhoPolynomial& a, const RhoPolynomial& b);
    friend RhoPolynomial operator*(const RhoPolynomial& a, const RhoPolynomial& b);
    friend bool operator==(const RhoPolynomial& a, const RhoPolynomial& b);
};

/// Exact coefficients r_j with |D| rho^k = sum_{j=1}^{k+1} r_j rho^j, for
/// 1 <= k <= 10. Computed by applying the Hilbert identity termwise to the
/// partial fractions, differentiating, and re-expressing in powers of rho;
/// the reconstruction residue is checked to vanish identically.
RhoPolynomial modD_rho_power_coeffs(int k);

/// Re-express a partial-fraction form as a polynomial in rho; throws if the
/// form does not lie in the span (certifying the closure when it succeeds).
RhoPolynomial partial_fractions_to_rho_polynomial(const PartialFractionForm& form);

}  // namespace solwave
