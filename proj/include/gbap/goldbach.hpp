#pragma once

#include "gbap/arith.hpp"
#include "gbap/zero_sums.hpp"
#include "gbap/zeros.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gbap {

struct GoldbachConfig {
    double X = 2.0;
    std::uint64_t q1 = 1, q2 = 1;
    std::uint64_t a1 = 0, a2 = 0;
    double T = 0.0;
    ExponentConfig exponents;
    std::optional<SiegelDatum> siegel1;
    std::optional<SiegelDatum> siegel2;

    // Reduces a_i mod q_i, then throws std::invalid_argument on a non-unit
    // residue, X < 2, T < 0 or a Siegel datum for the wrong modulus.
    void normalize();
};

// G(n) = sum over m + l = n, m = a1 (q1), l = a2 (q2) of Lambda(m) Lambda(l).
// Zero for n < 2.
double goldbach_G(const LambdaTable& table, std::uint64_t n, std::uint64_t q1, std::uint64_t q2, std::uint64_t a1,
                  std::uint64_t a2);

// G(n) for every n in [0, N] by convolving the two prime-power progressions.
std::vector<double> goldbach_G_table(const LambdaTable& table, std::uint64_t N, std::uint64_t q1, std::uint64_t q2,
                                     std::uint64_t a1, std::uint64_t a2);

// S(X) = sum_{n <= X} G(n) = sum_{m <= X, m = a1 (q1)} Lambda(m) psi(X - m, q2, a2).
double summatory_S(const LambdaTable& table, const GoldbachConfig& config);

struct DecompositionReport {
    double X = 0.0;
    std::uint64_t q1 = 1, q2 = 1, a1 = 0, a2 = 0;
    double T = 0.0;
    double b_star1 = 0.5, b_star2 = 0.5;
    double S_exact = 0.0;
    double main_term = 0.0;
    double h1_term = 0.0;  // H(X, q1, a1) / phi(q2)
    double h2_term = 0.0;  // H(X, q2, a2) / phi(q1)
    double z_term = 0.0;
    double residual = 0.0;
    double bound = 0.0;
    double bound_ratio = 0.0;
    // truncation diagnostics
    double h1_imag_residual = 0.0;
    double h2_imag_residual = 0.0;
    std::size_t zeros_used1 = 0;
    std::size_t zeros_used2 = 0;
    double z_tail_estimate = 0.0;  // X^(beta~ + 1/2) / T for a Siegel-active run
    std::string siegel1;
    std::string siegel2;
    std::string zero_provenance;

    // ((((main + h1) + h2) + z) + residual); equals S_exact whenever the sum
    // of the analytic terms is within a factor 2 of S_exact.
    double reconstruct() const { return (((main_term + h1_term) + h2_term) + z_term) + residual; }
};

// Main term X^2 / (2 phi1 phi2), the H terms, the pair term and the residual
// E = S - (terms). zeros1 / zeros2 cover every character mod q1 / q2.
DecompositionReport assemble_report(const LambdaTable& table, const GoldbachConfig& config, const ZeroCatalog& zeros1,
                                    const ZeroCatalog& zeros2);

struct GallagherResult {
    double x = 0.0;
    std::uint64_t q = 1;
    double lhs = 0.0;
    double ratio = 0.0;  // lhs / x
    bool pass = false;   // lhs <= x / 2
};

// |x - sum Lambda(n) chi0(n)| + sum_{chi != chi0} |sum Lambda(n) chi(n)| over
// x <= n <= 2x, against x / 2.
GallagherResult gallagher_check(const LambdaTable& table, double x, std::uint64_t q);

struct OmegaConstruction {
    double x = 0.0;
    double y = 0.0;
    std::uint64_t Q = 1;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // lhs / rhs
    bool pass = false;    // lhs >= rhs
    std::optional<std::uint64_t> excluded_prime;
};

// Q = product of primes p <= y with p not dividing q1 q2 (and p != excluded);
// lhs = sum over b mod Q, (b, Q) = 1 of psi(2x, q1 Q, A_b) psi(2x, q2 Q, B_b)
// with A_b = a1 (q1), b (Q) and B_b = a2 (q2), -b (Q); rhs = x^2 / (4 phi(q1) phi(q2) phi(Q)).
OmegaConstruction omega_construction(const LambdaTable& table, double x, double y, std::uint64_t q1,
                                     std::uint64_t q2, std::uint64_t a1, std::uint64_t a2,
                                     std::optional<std::uint64_t> excluded_prime = std::nullopt);

struct OmegaScanRow {
    std::uint64_t x = 0;
    double ratio = 0.0;  // max over 16 <= n <= x of G(n) / (n log log n)
    std::uint64_t argmax = 0;
    double G = 0.0;
};

// Doubling grid x = 2, 4, 8, ..., floor(log2(N/2)) + 1 rows; rows below 16 are 0.
std::vector<OmegaScanRow> omega_scan(const LambdaTable& table, std::uint64_t N, std::uint64_t q1, std::uint64_t q2,
                                     std::uint64_t a1, std::uint64_t a2);

} // namespace gbap
