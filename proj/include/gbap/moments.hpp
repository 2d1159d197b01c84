#pragma once

#include "gbap/arith.hpp"
#include "gbap/characters.hpp"
#include "gbap/zero_sums.hpp"
#include "gbap/zeros.hpp"

namespace gbap {

struct MomentResult {
    double value = 0.0;
    double x = 0.0;
    double h = 0.0;  // 0 for H
    std::uint64_t q = 1;
    std::uint64_t a = 0;
    bool siegel_active = false;
    double b_star = 0.5;
    double bound_ratio = 0.0;
    std::uint64_t segment_count = 0;
};

// psi(t, chi) = sum_{n <= t} chi(n) Lambda(n).
cplx psi_chi(const LambdaTable& table, double t, const DirichletCharacter& chi);

struct ExplicitPsi {
    cplx approximation;
    cplx exact;
    cplx residual;  // approximation - exact
    std::size_t zeros_used = 0;
};

// delta0 t - sum_{1 < |gamma| <= T} t^rho / rho - sum_{|gamma| <= 1} (t^rho - 1) / rho
// for the primitive character inducing chi; for imprimitive chi the terms
// with (n, q) > 1 are then removed exactly. T must not exceed the catalog height.
ExplicitPsi explicit_psi_chi(const LambdaTable& table, double t, double T, const DirichletCharacter& chi,
                             const ZeroCatalog& zeros);

// H(x) = int_0^x (psi(t, q, a) - t/phi + [siegel] chi~(a) t^beta / (phi beta))^2 dt.
// bound_ratio = H / (x^(2 b* + 1) log^2(q x)).
MomentResult second_moment_H(const LambdaTable& table, double x, std::uint64_t q, std::uint64_t a,
                             const SiegelDatum* siegel = nullptr, double b_star = 0.5);

// K(x, h) = int_0^x (psi(t + h) - psi(t) - h/phi + [siegel] chi~(a) ((t+h)^beta - t^beta) / (phi beta))^2 dt.
// bound_ratio = K / (h x^(2 b*) log^2(q x)). Requires 1 <= h <= x.
MomentResult second_moment_K(const LambdaTable& table, double x, double h, std::uint64_t q, std::uint64_t a,
                             const SiegelDatum* siegel = nullptr, double b_star = 0.5);

struct IdentityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;  // lhs - rhs
    double ratio = 0.0;     // residual / (X log(2q) log X)
};

// lhs = sum_{n <= X} psi(n - 1, q, a) (exact);
// rhs = X^2 / (2 phi) + H(X, q, a).
IdentityCheck sum_psi_progression(const LambdaTable& table, double X, std::uint64_t q, std::uint64_t a,
                                  const ZeroCatalog& zeros);

// sum_{n <= X} sum_{m <= n-1, m = a (q)} Lambda(m) (n - m)^(beta - 1), for 0 < beta <= 1.
double weighted_beta_lhs(const LambdaTable& table, double X, std::uint64_t q, std::uint64_t a, double beta);

// lhs as above; rhs = (1/phi) [X^(beta+1) / (beta (beta+1)) -
// sum_chi conj chi(a) sum_rho Gamma(beta) Gamma(rho) / Gamma(beta + rho + 1) X^(rho + beta)].
// Requires 1/2 < beta < 1.
IdentityCheck weighted_beta_sum(const LambdaTable& table, double X, std::uint64_t q, std::uint64_t a, double beta,
                                const ZeroCatalog& zeros);

struct PowerSumReport {
    double X = 0.0;
    double beta = 0.0, beta1 = 0.0, beta2 = 0.0;
    double lhs1 = 0.0, main1 = 0.0, ratio1 = 0.0;  // ratio = |lhs - main| / X
    double lhs2 = 0.0, main2 = 0.0, ratio2 = 0.0;
};

// lhs1 = sum_{n <= X} sum_{k <= n-1} k^(beta-1) against X^(beta+1) / (beta (beta+1));
// lhs2 = sum_{n <= X} sum_{m + k = n} m^(beta2-1) k^(beta1-1) against
// Gamma(beta1) Gamma(beta2) / Gamma(beta1 + beta2 + 1) X^(beta1 + beta2).
PowerSumReport power_sum_identities(double X, double beta, double beta1, double beta2);

} // namespace gbap
