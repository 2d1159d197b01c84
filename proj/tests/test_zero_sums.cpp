#include "doctest.h"

#include "gbap/arith.hpp"
#include "gbap/zero_sums.hpp"

#include <cmath>
#include <stdexcept>

using namespace gbap;

TEST_CASE("empty zero sets give nothing") {
    const ZeroCatalog none;
    const CharacterGroup g(7);
    const ZeroSumResult r = zero_sum_H(1e5, g, 3, none);
    CHECK(r.value == 0.0);
    CHECK(r.zero_count == 0);
}

TEST_CASE("single conjugate pair for zeta") {
    ZeroSet z;
    z.height = 20.0;
    z.zeros = {{0.5, 14.1347251}};
    ZeroCatalog cat;
    cat.insert(z);
    const CharacterGroup g(1);
    const double X = 100.0;
    const cplx rho{0.5, 14.1347251};
    const double want = -2.0 * (std::pow(X, rho + 1.0) / (rho * (rho + 1.0))).real();
    const ZeroSumResult r = zero_sum_H(X, g, 0, cat);
    CHECK(r.value == doctest::Approx(want).epsilon(1e-14));
    CHECK(r.zero_count == 2);
}

TEST_CASE("pairing cancels the imaginary part") {
    std::vector<std::uint64_t> moduli;
    for (std::uint64_t q = 1; q <= 12; ++q) moduli.push_back(q);
    const ZeroCatalog cat = ZeroCatalog::compute(moduli, 100.0);
    double worst = 0.0;
    for (std::uint64_t q = 1; q <= 12; ++q) {
        const CharacterGroup g(q);
        for (std::uint64_t a = 0; a < q || a == 0; ++a) {
            if (gcd(a, q) != 1 && q > 1) continue;
            for (double X : {1e2, 1e4, 1e6}) {
                const ZeroSumResult r = zero_sum_H(X, g, a, cat);
                worst = std::max(worst, std::abs(r.imag_residual) / std::abs(r.value));
            }
            if (q == 1) break;
        }
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("weighted sums include the Siegel term") {
    const ZeroCatalog none;
    const CharacterGroup g(4);
    const SiegelDatum s{0.9, 3, 4};
    auto f = [](cplx r) { return r * r; };
    CHECK(weighted_zero_sum(g, 1, none, &s, f).value == doctest::Approx(0.81 / 2));
    CHECK(weighted_zero_sum(g, 3, none, &s, f).value == doctest::Approx(-0.81 / 2));
}

TEST_CASE("Siegel data validation") {
    CHECK_NOTHROW((SiegelDatum{0.9, 3, 4}.validate()));
    CHECK_THROWS_AS((SiegelDatum{0.4, 3, 4}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((SiegelDatum{0.9, 1, 4}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((SiegelDatum{0.9, 2, 5}.validate()), std::invalid_argument);  // complex character
    const std::string d = SiegelDatum{0.9, 3, 4}.describe();
    CHECK(std::stod(d.substr(0, d.find(':'))) == 0.9);
    CHECK(d.substr(d.find(':')) == ":3:4");
}

TEST_CASE("exponent config") {
    ExponentConfig c;
    CHECK(c.for_modulus(7) == 0.5);
    c.set(7, 0.75);
    c.set_default(0.6);
    CHECK(c.for_modulus(7) == 0.75);
    CHECK(c.for_modulus(9) == 0.6);
    CHECK_THROWS_AS(c.set(3, 1.2), std::invalid_argument);
    CHECK_THROWS_AS(c.set_default(0.2), std::invalid_argument);
}
