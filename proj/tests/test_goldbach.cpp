#include "doctest.h"

#include "gbap/goldbach.hpp"

#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

using namespace gbap;

namespace {

GoldbachConfig config(double X, std::uint64_t q1, std::uint64_t q2, std::uint64_t a1, std::uint64_t a2) {
    GoldbachConfig c;
    c.X = X;
    c.q1 = q1;
    c.q2 = q2;
    c.a1 = a1;
    c.a2 = a2;
    return c;
}

} // namespace

TEST_CASE("G examples") {
    const LambdaTable t = build_lambda_table(100);
    const double l2 = std::log(2.0), l3 = std::log(3.0), l5 = std::log(5.0);
    CHECK(goldbach_G(t, 8, 1, 1, 0, 0) == doctest::Approx(2 * l3 * l5 + l2 * l2).epsilon(1e-14));
    CHECK(std::abs(goldbach_G(t, 8, 1, 1, 0, 0) - 4.0167486) < 1e-6);
    CHECK(goldbach_G(t, 6, 2, 2, 1, 1) == doctest::Approx(l3 * l3).epsilon(1e-14));
    CHECK(std::abs(goldbach_G(t, 6, 2, 2, 1, 1) - 1.2069494) < 1e-6);
    CHECK(goldbach_G(t, 7, 2, 2, 1, 1) == 0.0);
    CHECK(goldbach_G(t, 1, 1, 1, 0, 0) == 0.0);
}

TEST_CASE("G table agrees with the pointwise sum and the oracle") {
    const LambdaTable t = build_lambda_table(3000);
    const auto lam = oracle::lambda_table(3000);
    for (auto [q1, q2, a1, a2] : {std::array<std::uint64_t, 4>{1, 1, 0, 0}, {3, 4, 2, 1}, {6, 9, 5, 4}, {12, 10, 7, 3}}) {
        const auto G = goldbach_G_table(t, 3000, q1, q2, a1, a2);
        REQUIRE(G.size() == 3001);
        for (std::uint64_t n = 0; n <= 3000; n += 7) {
            const double ref = oracle::G(lam, n, q1, q2, a1, a2);
            CHECK(G[n] == doctest::Approx(ref).epsilon(1e-13));
            CHECK(goldbach_G(t, n, q1, q2, a1, a2) == doctest::Approx(ref).epsilon(1e-13));
        }
    }
}

TEST_CASE("S examples") {
    const LambdaTable t = build_lambda_table(3000);
    CHECK(summatory_S(t, config(4, 1, 1, 0, 0)) == doctest::Approx(std::pow(std::log(2.0), 2)).epsilon(1e-14));
    CHECK(summatory_S(t, config(4, 1, 1, 0, 0)) == doctest::Approx(0.4804530).epsilon(1e-7));
    const auto lam = oracle::lambda_table(2000);
    CHECK(std::abs(summatory_S(t, config(2000, 3, 4, 2, 1)) - oracle::S(lam, 2000, 3, 4, 2, 1)) < 1e-9);
    double prev = 0.0;
    for (double X = 2; X <= 3000; X += 13.5) {
        const double s = summatory_S(t, config(X, 5, 8, 2, 3));
        CHECK(s >= prev);
        prev = s;
    }
}

TEST_CASE("config validation") {
    GoldbachConfig c = config(100, 6, 4, 7, 5);
    CHECK_NOTHROW(c.normalize());
    CHECK(c.a1 == 1);
    CHECK(c.a2 == 1);
    GoldbachConfig bad = config(100, 6, 4, 3, 1);
    CHECK_THROWS_AS(bad.normalize(), std::invalid_argument);
    GoldbachConfig small = config(1.5, 1, 1, 0, 0);
    CHECK_THROWS_AS(small.normalize(), std::invalid_argument);
    GoldbachConfig wrong = config(100, 3, 4, 1, 1);
    wrong.siegel1 = SiegelDatum{0.9, 3, 4};
    CHECK_THROWS_AS(wrong.normalize(), std::invalid_argument);
}

TEST_CASE("decomposition with no zeros") {
    const LambdaTable t = build_lambda_table(5000);
    const ZeroCatalog none;
    GoldbachConfig c = config(5000, 3, 4, 2, 1);
    const DecompositionReport r = assemble_report(t, c, none, none);
    CHECK(r.h1_term == 0.0);
    CHECK(r.h2_term == 0.0);
    CHECK(r.z_term == 0.0);
    CHECK(r.residual == r.S_exact - 5000.0 * 5000.0 / (2 * 2 * 2));
}

TEST_CASE("decomposition reconstructs S") {
    const LambdaTable t = build_lambda_table(100000);
    const std::uint64_t m[] = {1};
    const ZeroCatalog zeros = ZeroCatalog::compute(m, 200.0);
    GoldbachConfig c = config(1e5, 1, 1, 0, 0);
    c.T = 200.0;
    const DecompositionReport r = assemble_report(t, c, zeros, zeros);
    CHECK(r.reconstruct() == r.S_exact);
    CHECK(std::abs(r.residual) < 1e5 * std::pow(std::log(1e5), 3));
    CHECK(r.zeros_used1 > 0);
    CHECK(r.h1_term == r.h2_term);
}

TEST_CASE("summing over unit pairs gives the coprime sum") {
    const std::uint64_t X = 10000;
    const LambdaTable t = build_lambda_table(X);
    const auto lam = oracle::lambda_table(X);
    const ZeroCatalog none;
    double total = 0.0;
    for (std::uint64_t a1 : {1, 2})
        for (std::uint64_t a2 : {1, 3}) total += assemble_report(t, config(X, 3, 4, a1, a2), none, none).S_exact;
    long double ref = 0;
    for (std::uint64_t m = 2; m < X; ++m) {
        if (lam[m] == 0.0 || m % 3 == 0) continue;
        for (std::uint64_t l = 2; m + l <= X; ++l)
            if (lam[l] != 0.0 && l % 2 == 1) ref += static_cast<long double>(lam[m]) * lam[l];
    }
    CHECK(total == doctest::Approx(static_cast<double>(ref)).epsilon(1e-13));
}

TEST_CASE("pair term") {
    const CharacterGroup g4(4);
    const ZeroCatalog none;
    CHECK(zterm(1e4, {g4, 1, none, nullptr}, {g4, 1, none, nullptr}) == 0.0);

    const SiegelDatum s{0.9, 3, 4};
    const double X = 1e4;
    const double want = std::tgamma(0.9) * std::tgamma(0.9) / std::tgamma(2.8) * std::pow(X, 1.8) / 4.0;
    CHECK(zterm(X, {g4, 1, none, &s}, {g4, 1, none, &s}) == doctest::Approx(want).epsilon(1e-12));

    // swapping the two sides leaves the value unchanged
    const CharacterGroup g3(3), g8(8);
    const std::uint64_t m[] = {3, 8};
    const ZeroCatalog zeros = ZeroCatalog::compute(m, 40.0);
    const SiegelDatum s3{0.8, 2, 3};
    const SiegelDatum s8{0.85, 3, 8};
    for (auto [p1, p2] : {std::pair<const SiegelDatum*, const SiegelDatum*>{&s3, &s8}, {&s3, nullptr}, {nullptr, &s8}}) {
        const double ab = zterm(X, {g3, 2, zeros, p1}, {g8, 5, zeros, p2});
        const double ba = zterm(X, {g8, 5, zeros, p2}, {g3, 2, zeros, p1});
        CHECK(ab == ba);
        CHECK(ab != 0.0);
    }
}

TEST_CASE("gallagher check") {
    const LambdaTable t = build_lambda_table(20000);
    const auto lam = oracle::lambda_table(20000);
    const GallagherResult r1 = gallagher_check(t, 1e4, 1);
    const double ref = std::abs(1e4 - (oracle::psi(lam, 20000, 1, 0) - oracle::psi(lam, 9999, 1, 0)));
    CHECK(r1.lhs == doctest::Approx(ref).epsilon(1e-12));
    CHECK(r1.pass);
    CHECK(gallagher_check(t, 1e3, 2).pass);
    const GallagherResult r210 = gallagher_check(t, 1e4, 210);
    CHECK(r210.ratio > 0.0);
    CHECK(r210.ratio == r210.lhs / 1e4);
}

TEST_CASE("omega construction degenerate cases") {
    const LambdaTable t = build_lambda_table(5000);
    const auto lam = oracle::lambda_table(5000);
    const OmegaConstruction w0 = omega_construction(t, 2000, 1.5, 3, 4, 2, 1);
    CHECK(w0.Q == 1);
    CHECK(w0.lhs == doctest::Approx(oracle::psi(lam, 4000, 3, 2) * oracle::psi(lam, 4000, 4, 1)).epsilon(1e-13));
    const OmegaConstruction w2 = omega_construction(t, 2000, 2.0, 1, 1, 0, 0);
    CHECK(w2.Q == 2);
    CHECK(w2.lhs == doctest::Approx(std::pow(oracle::psi(lam, 4000, 2, 1), 2)).epsilon(1e-13));
    const OmegaConstruction w7 = omega_construction(t, 2000, 7.0, 1, 1, 0, 0, 5);
    CHECK(w7.Q == 2 * 3 * 7);
    CHECK(w7.rhs == doctest::Approx(2000.0 * 2000.0 / (4 * 12)).epsilon(1e-14));
}

TEST_CASE("omega scan") {
    const std::uint64_t N = 20000;
    const LambdaTable t = build_lambda_table(N);
    const auto rows = omega_scan(t, N, 1, 1, 0, 0);
    CHECK(rows.size() == static_cast<std::size_t>(std::floor(std::log2(N / 2.0))) + 1);
    double prev = 0.0;
    for (const auto& r : rows) {
        CHECK(r.ratio >= prev);
        prev = r.ratio;
        if (r.x >= 16) {
            CHECK(r.argmax >= 16);
            CHECK(r.argmax <= r.x);
            CHECK(r.ratio == doctest::Approx(r.G / (r.argmax * std::log(std::log(double(r.argmax))))));
        }
    }
}
