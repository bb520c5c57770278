#pragma once

#include "solwave/grid.hpp"

namespace solwave {

enum class NormKind { Hk, HkSigma, X };

/// Norm selector. Hk is the spectral Sobolev norm; HkSigma weights by
/// (1+alpha^2)^{sigma/2} before taking Hk; X is Hk(2) combined with the
/// eta-weighted H^2 norm of alpha*u.
struct NormSpec {
    NormKind kind = NormKind::Hk;
    int k = 0;
    int sigma = 0;      // even, HkSigma only
    double eta = 0.1;   // X only

    static NormSpec hk(int k) { return {NormKind::Hk, k, 0, 0.0}; }
    static NormSpec hk_sigma(int k, int sigma) { return {NormKind::HkSigma, k, sigma, 0.0}; }
    static NormSpec x(double eta = 0.1) { return {NormKind::X, 2, 0, eta}; }
};

double norm(const GridFunction& f, const NormSpec& spec);

/// ||f||_{H^k} = sqrt( (L/n^2) * sum_k (1+xi^2)^k |fhat_k|^2 ), the grid
/// Parseval form of the Sobolev norm.
double sobolev_norm(const GridFunction& f, int k);

double l2_norm(const GridFunction& f);

/// sqrt(||u||_{H^2}^2 + eta^2 ||alpha u||_{H^2}^2).
double x_norm(const GridFunction& f, double eta = 0.1);

}  // namespace solwave
