#include "doctest.h"

#include "gbap/characters.hpp"
#include "gbap/lfunction.hpp"
#include "gbap/special.hpp"

#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace gbap;

TEST_CASE("log gamma against the real lgamma") {
    for (double x : {0.1, 0.5, 1.0, 2.5, 7.3, 30.0, 170.0}) {
        const cplx v = log_gamma({x, 0.0});
        CHECK(v.real() == doctest::Approx(std::lgamma(x)).epsilon(1e-13));
    }
    // reflection region
    CHECK(std::abs(gamma({-0.5, 0.0}) - cplx(-2 * std::sqrt(std::numbers::pi), 0)) < 1e-12);
    // |Gamma(1/2 + it)|^2 = pi / cosh(pi t)
    for (double t : {1.0, 10.0, 50.0}) {
        const double lhs = 2 * log_gamma({0.5, t}).real();
        CHECK(lhs == doctest::Approx(std::log(std::numbers::pi / std::cosh(std::numbers::pi * t))).epsilon(1e-12));
    }
    CHECK_THROWS_AS(log_gamma({-2.0, 0.0}), std::domain_error);
}

TEST_CASE("hurwitz zeta") {
    CHECK(std::abs(hurwitz_zeta({2, 0}, 1.0) - cplx(std::numbers::pi * std::numbers::pi / 6, 0)) < 1e-13);
    // zeta(s, 1/2) = (2^s - 1) zeta(s)
    const cplx s{0.5, 21.0};
    const cplx z = oracle::zeta_borwein(s);
    CHECK(std::abs(hurwitz_zeta(s, 0.5) - (std::pow(2.0, s) - 1.0) * z) < 1e-10);
    CHECK_THROWS_AS(hurwitz_zeta({1, 0}, 0.3), std::domain_error);
}

TEST_CASE("L-function special values") {
    CHECK(std::abs(evaluate_L({2, 0}, make_character(1, 1)) - cplx(1.6449340668482264, 0)) < 1e-12);
    CHECK(std::abs(evaluate_L({1, 0}, make_character(4, 3)) - cplx(std::numbers::pi / 4, 0)) < 1e-12);
    // principal mod 6 = zeta with the Euler factors at 2 and 3 removed
    const cplx l6 = evaluate_L({2, 0}, make_character(6, 1));
    const double z2 = std::numbers::pi * std::numbers::pi / 6;
    CHECK(std::abs(l6 / (z2 * (1 - 0.25) * (1 - 1.0 / 9)) - 1.0) < 1e-12);
    CHECK_THROWS_AS(evaluate_L({1, 0}, make_character(1, 1)), std::domain_error);
    CHECK_THROWS_AS(evaluate_L({0.5, 2e4}, make_character(1, 1)), std::domain_error);
}

TEST_CASE("zeta on the critical line against an independent series") {
    LEvaluator L(make_character(1, 1));
    for (double t : {3.0, 14.134725, 40.0, 77.7, 150.0}) {
        const cplx s{0.5, t};
        CHECK(std::abs(L(s) - oracle::zeta_borwein(s)) < 1e-9);
    }
}

TEST_CASE("functional equation") {
    for (std::uint64_t q : {1, 3, 4, 5, 7, 8, 11, 12}) {
        const CharacterGroup g(q);
        for (const auto& chi : g.characters()) {
            if (!chi.is_primitive()) continue;
            const auto cchi = make_character(q, chi.conjugate_label());
            CHECK(std::abs(std::abs(root_number(chi)) - 1.0) < 1e-12);
            for (cplx s : {cplx(0.3, 5.0), cplx(0.8, 17.0), cplx(0.5, 33.0)}) {
                if (chi.is_principal() && std::abs(s - 1.0) < 1e-9) continue;
                const cplx lhs = completed_L(s, chi);
                const cplx rhs = root_number(chi) * completed_L(1.0 - s, cchi);
                CHECK(std::abs(lhs - rhs) <= 1e-9 * std::abs(lhs));
            }
        }
    }
}

TEST_CASE("Hardy Z is real and matches |L|") {
    for (std::uint64_t q : {1, 5, 7}) {
        for (const CharacterGroup grp(q); const auto& chi : grp.characters()) {
            if (!chi.is_primitive()) continue;
            HardyZ Z(chi);
            LEvaluator L(chi);
            for (double t : {2.0, 9.5, 31.0, 120.0}) {
                const cplx r = Z.rotated(t);
                CHECK(std::abs(r.imag()) <= 1e-10 * std::max(1.0, std::abs(r)));
                CHECK(std::abs(std::abs(r) - std::abs(L({0.5, t}))) < 1e-10);
            }
        }
    }
    HardyZ zeta(make_character(1, 1));
    for (double t : {20.0, 60.0, 200.0}) CHECK(std::abs(zeta(t) - oracle::hardy_Z(t)) < 1e-8);
}

TEST_CASE("beta weight") {
    // Gamma(a) Gamma(b) / Gamma(a + b + 1) x^(a + b) at real points
    const double a = 0.9, b = 0.9, x = 1000.0;
    const double want = std::tgamma(a) * std::tgamma(b) / std::tgamma(a + b + 1) * std::pow(x, a + b);
    CHECK(std::abs(beta_weight(a, b, x) - want) < 1e-12 * want);
    CHECK(std::isfinite(std::abs(beta_weight({0.5, 5000}, {0.5, -4000}, 1e6))));
}
