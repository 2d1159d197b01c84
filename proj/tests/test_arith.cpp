#include "doctest.h"

#include "gbap/arith.hpp"
#include "gbap/parallel.hpp"

#include "oracles.hpp"

#include <cmath>
#include <filesystem>
#include <random>
#include <stdexcept>

using namespace gbap;
using doctest::Approx;

TEST_CASE("lambda table small values") {
    const LambdaTable one = build_lambda_table(1);
    REQUIRE(one.limit() == 1);
    CHECK(one(1) == 0.0);
    const LambdaTable t = build_lambda_table(100);
    CHECK(t(8) == Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(t(8) == 0.6931471805599453);
    CHECK(t(12) == 0.0);
    CHECK(t(97) == std::log(97.0));
    CHECK_THROWS_AS(build_lambda_table(0), std::invalid_argument);
}

TEST_CASE("sieve matches trial division across segment boundaries") {
    const std::uint64_t N = 300000;
    const LambdaTable t = build_lambda_table(N);
    const auto ref = oracle::lambda_table(N);
    std::size_t mismatches = 0;
    for (std::uint64_t n = 1; n <= N; ++n)
        if (t(n) != ref[n]) ++mismatches;
    CHECK(mismatches == 0);
    std::size_t count = 0;
    for (std::uint64_t n = 1; n <= N; ++n) count += ref[n] != 0.0;
    CHECK(t.prime_powers().size() == count);
    CHECK(t.prime_powers_upto(100).size() == 25 + 10);  // 25 primes, 10 higher powers
}

TEST_CASE("lambda table save and load") {
    const LambdaTable t = build_lambda_table(5000);
    const auto path = std::filesystem::temp_directory_path() / "gbap_test_table.bin";
    t.save(path);
    const LambdaTable u = LambdaTable::load(path);
    std::filesystem::remove(path);
    REQUIRE(u.limit() == t.limit());
    for (std::uint64_t n = 1; n <= 5000; ++n) CHECK(u(n) == t(n));
}

TEST_CASE("euler phi") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(10) == 4);
    CHECK(euler_phi(7) == 6);
    for (std::uint64_t q = 1; q <= 200; ++q) {
        std::uint64_t c = 0;
        for (std::uint64_t a = 1; a <= q; ++a) c += gcd(a, q) == 1;
        CHECK(euler_phi(q) == c);
    }
}

TEST_CASE("crt") {
    CHECK(crt_combine(1, 2, 2, 3) == 5);
    CHECK(crt_combine(0, 1, 4, 9) == 4);
    CHECK(crt_combine(3, 5, 3, 7) == 3);
    for (std::uint64_t q1 = 1; q1 <= 12; ++q1)
        for (std::uint64_t q2 = 1; q2 <= 12; ++q2) {
            if (gcd(q1, q2) != 1) continue;
            for (std::uint64_t a1 = 0; a1 < q1; ++a1)
                for (std::uint64_t a2 = 0; a2 < q2; ++a2) {
                    const std::uint64_t A = crt_combine(a1, q1, a2, q2);
                    CHECK(A < q1 * q2);
                    CHECK(A % q1 == a1);
                    CHECK(A % q2 == a2);
                }
        }
}

TEST_CASE("mod inverse and residue checks") {
    for (std::uint64_t a = 1; a < 30; ++a)
        if (gcd(a, 30) == 1) CHECK(a * mod_inverse(a, 30) % 30 == 1);
    CHECK_NOTHROW(check_residue(1, 0));
    CHECK_NOTHROW(check_residue(4, 7));
    CHECK_THROWS_AS(check_residue(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(check_residue(6, 3), std::invalid_argument);
    CHECK(reduce_residue(-1, 5) == 4);
}

TEST_CASE("progression prefix") {
    const LambdaTable t = build_lambda_table(1000);
    CHECK(progression_prefix(t, 4, 1)(10) == Approx(std::log(5.0) + std::log(9.0) / 2).epsilon(1e-15));
    CHECK(progression_prefix(t, 4, 1)(10) == Approx(2.7080502).epsilon(1e-7));
    CHECK(progression_prefix(t, 1, 0)(10) == Approx(7.8320150).epsilon(1e-7));
    CHECK(progression_prefix(t, 3, 2).at(1.99) == 0.0);
    CHECK(progression_prefix(t, 3, 2)(-5) == 0.0);
    const auto lam = oracle::lambda_table(1000);
    for (std::uint64_t q : {1, 5, 12})
        for (std::uint64_t a = 0; a < q; ++a) {
            const ProgressionPrefix p = progression_prefix(t, q, a);
            const auto ref = oracle::psi_prefix(lam, q, a);
            for (std::int64_t n = 0; n <= 1000; ++n)
                CHECK(p(n) == Approx(static_cast<double>(ref[n])).epsilon(1e-14));
        }
}

TEST_CASE("fixed-point sums do not depend on order") {
    const LambdaTable t = build_lambda_table(20000);
    std::vector<double> v(t.values().begin(), t.values().end());
    Fixed a = 0;
    for (double x : v) a += to_fixed(x);
    std::mt19937_64 rng(7);
    std::shuffle(v.begin(), v.end(), rng);
    Fixed b = 0;
    for (double x : v) b += to_fixed(x);
    CHECK(a == b);
    for (double x : v) CHECK(from_fixed(to_fixed(x)) == x);
}

TEST_CASE("parallel results do not depend on thread count") {
    const unsigned saved = thread_count();
    set_thread_count(1);
    const LambdaTable a = build_lambda_table(200000);
    set_thread_count(4);
    const LambdaTable b = build_lambda_table(200000);
    set_thread_count(saved);
    CHECK(std::equal(a.values().begin(), a.values().end(), b.values().begin(), b.values().end()));
}

TEST_CASE("parallel_for rethrows the lowest failing index") {
    const unsigned saved = thread_count();
    set_thread_count(3);
    try {
        parallel_for(50, [](std::size_t i) {
            if (i == 17 || i == 40) throw std::runtime_error(std::to_string(i));
        });
        FAIL("no exception");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()) == "17");
    }
    set_thread_count(saved);
}
