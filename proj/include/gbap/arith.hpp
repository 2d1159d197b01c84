#pragma once

#include "gbap/summation.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gbap {

struct PrimePower {
    std::uint64_t n;
    double lambda;
};

// Sieved von Mangoldt table on [1, N].
class LambdaTable {
public:
    LambdaTable() = default;

    std::uint64_t limit() const { return limit_; }

    // Lambda(n) for 1 <= n <= N; 0 for n outside the table's range below 1.
    double operator()(std::uint64_t n) const { return values_.at(n); }

    // values()[n] == Lambda(n); index 0 is an unused 0 slot.
    std::span<const double> values() const { return values_; }

    // Prime powers in increasing order.
    std::span<const PrimePower> prime_powers() const { return prime_powers_; }

    // Prime powers n <= bound.
    std::span<const PrimePower> prime_powers_upto(std::uint64_t bound) const;

    void save(const std::filesystem::path& path) const;
    static LambdaTable load(const std::filesystem::path& path);

private:
    friend LambdaTable build_lambda_table(std::uint64_t n);
    static LambdaTable from_values(std::vector<double> values);

    std::uint64_t limit_ = 0;
    std::vector<double> values_;
    std::vector<PrimePower> prime_powers_;
};

// Largest N accepted by build_lambda_table (memory budget, ~1e8 by default).
void set_sieve_limit_ceiling(std::uint64_t ceiling);
std::uint64_t sieve_limit_ceiling();

// Segmented sieve of Eratosthenes; throws std::invalid_argument for N == 0 or
// N above the configured ceiling.
LambdaTable build_lambda_table(std::uint64_t n);

// psi(t, q, a) sampled at the integers 0..N. Sums are exact (see Fixed).
class ProgressionPrefix {
public:
    ProgressionPrefix(const LambdaTable& table, std::uint64_t q, std::uint64_t a);

    std::uint64_t modulus() const { return q_; }
    std::uint64_t residue() const { return a_; }
    std::uint64_t limit() const { return cumulative_.size() - 1; }

    // psi(t, q, a) for integer t; t < 0 gives 0.
    double operator()(std::int64_t t) const;
    // psi at real t, i.e. at floor(t).
    double at(double t) const;

    Fixed fixed(std::int64_t t) const;

private:
    std::uint64_t q_;
    std::uint64_t a_;
    std::vector<Fixed> cumulative_;
};

ProgressionPrefix progression_prefix(const LambdaTable& table, std::uint64_t q, std::uint64_t a);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);

struct PrimeFactor {
    std::uint64_t p;
    int e;
};

// Trial-division factorization, primes ascending. factorize(1) is empty.
std::vector<PrimeFactor> factorize(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t q);

// Inverse of a modulo m; requires gcd(a, m) == 1.
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m);

// Unique A mod q1*q2 with A = a1 (q1), A = a2 (q2). Requires gcd(q1,q2)=1.
std::uint64_t crt_combine(std::uint64_t a1, std::uint64_t q1, std::uint64_t a2, std::uint64_t q2);

// Residues are read mod q (so q = 1 takes a = 0). Throws
// std::invalid_argument for q = 0 or a residue that is not a unit.
void check_residue(std::uint64_t q, std::uint64_t a);

// Canonical residue in [0, q).
inline std::uint64_t reduce_residue(std::int64_t a, std::uint64_t q) {
    auto m = static_cast<std::int64_t>(q);
    return static_cast<std::uint64_t>(((a % m) + m) % m);
}

} // namespace gbap
