#include "doctest.h"

#include "gbap/arith.hpp"
#include "gbap/characters.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

using namespace gbap;
using cplx = std::complex<double>;

namespace {

bool near(cplx a, cplx b, double tol = 1e-12) { return std::abs(a - b) < tol; }

} // namespace

TEST_CASE("group sizes and orders") {
    CHECK(CharacterGroup(1).phi() == 1);
    CHECK(CharacterGroup(1).principal().is_principal());
    const CharacterGroup g5(5);
    std::multiset<std::uint64_t> orders;
    for (const auto& c : g5.characters()) orders.insert(c.order());
    CHECK(orders == std::multiset<std::uint64_t>{1, 2, 4, 4});
    const CharacterGroup g8(8);
    CHECK(g8.phi() == 4);
    for (const auto& c : g8.characters()) CHECK(c.is_real());
    for (std::uint64_t q = 1; q <= 60; ++q) CHECK(CharacterGroup(q).phi() == euler_phi(q));
}

TEST_CASE("character values") {
    for (std::uint64_t q : {3, 7, 12, 30})
        for (std::int64_t m = 0; m < static_cast<std::int64_t>(q); ++m)
            if (gcd(m, q) == 1) CHECK(near(CharacterGroup(q).principal().value(m), 1.0));
    const CharacterGroup g4(4);
    CHECK(near(g4.by_label(3).value(3), -1.0));
    for (const CharacterGroup grp(6); const auto& c : grp.characters()) CHECK(c.value(3) == cplx(0.0, 0.0));
}

TEST_CASE("characters are multiplicative and periodic") {
    for (std::uint64_t q = 1; q <= 30; ++q)
        for (const CharacterGroup grp(q); const auto& c : grp.characters())
            for (std::int64_t m = 0; m < 2 * static_cast<std::int64_t>(q); ++m) {
                CHECK(near(c.value(m), c.value(m + static_cast<std::int64_t>(q))));
                CHECK(near(c.value(-m), c.value(static_cast<std::int64_t>(q) - m)));
                for (std::int64_t n = 0; n < static_cast<std::int64_t>(q); ++n)
                    CHECK(near(c.value(m * n), c.value(m) * c.value(n)));
            }
}

TEST_CASE("conductors") {
    for (std::uint64_t q : {5, 9, 12}) CHECK(CharacterGroup(q).principal().conductor() == 1);
    const CharacterGroup g6(6);
    const auto& chi = g6.by_label(5);
    CHECK(chi.conductor() == 3);
    const ConductorInfo info = conductor_and_primitive(chi);
    CHECK(info.conductor == 3);
    CHECK(info.primitive.modulus() == 3);
    CHECK(info.primitive.order() == 2);
    for (std::int64_t n = 1; n < 12; ++n)
        if (gcd(n, 6) == 1) CHECK(near(chi.value(n), info.primitive.value(n)));
    const CharacterGroup g5(5);
    for (const auto& c : g5.characters())
        if (c.order() == 2) CHECK(c.conductor() == 5);

    // the inducing character agrees on units, and no smaller modulus induces it
    for (std::uint64_t q = 2; q <= 40; ++q)
        for (const CharacterGroup grp(q); const auto& c : grp.characters()) {
            const auto p = conductor_and_primitive(c).primitive;
            CHECK(p.is_primitive());
            CHECK(q % p.modulus() == 0);
            for (std::int64_t n = 1; n < static_cast<std::int64_t>(q); ++n)
                if (gcd(n, q) == 1) CHECK(near(c.value(n), p.value(n)));
        }
}

TEST_CASE("primitive character counts") {
    // number of primitive characters mod q is the Dirichlet inverse of phi against 1
    for (std::uint64_t q = 1; q <= 60; ++q) {
        std::int64_t expected = 0;
        for (std::uint64_t d = 1; d <= q; ++d) {
            if (q % d) continue;
            std::uint64_t m = q / d;
            int mu = 1;
            for (const auto& f : factorize(m)) mu = f.e > 1 ? 0 : -mu;
            expected += mu * static_cast<std::int64_t>(euler_phi(d));
        }
        std::int64_t found = 0;
        for (const CharacterGroup grp(q); const auto& c : grp.characters()) found += c.is_primitive();
        CHECK(found == expected);
    }
}

TEST_CASE("conjugate labels") {
    for (std::uint64_t q = 1; q <= 30; ++q) {
        const CharacterGroup g(q);
        for (const auto& c : g.characters()) {
            const auto& d = g.by_label(c.conjugate_label());
            for (std::int64_t n = 0; n < static_cast<std::int64_t>(q); ++n) CHECK(near(d.value(n), c.conj_value(n)));
        }
    }
}

TEST_CASE("orthogonality examples") {
    CHECK(CharacterGroup(7).orthogonality_exact(3, 3) == 6);
    CHECK(CharacterGroup(5).orthogonality_exact(2, 3) == 0);
    const cplx s = orthogonality_sum(12, 5, 7);
    CHECK(std::abs(s) < 1e-12);
    CHECK_THROWS_AS(orthogonality_sum(6, 2, 1), std::invalid_argument);
}

TEST_CASE("make_character rejects bad labels") {
    CHECK_NOTHROW(make_character(1, 0));
    CHECK_THROWS_AS(make_character(6, 3), std::invalid_argument);
    CHECK_THROWS_AS(make_character(0, 1), std::invalid_argument);
}

TEST_CASE("character csv") {
    std::ostringstream out;
    CharacterGroup(8).write_csv(out);
    const std::string s = out.str();
    CHECK(s.rfind("label,order,conductor", 0) == 0);
    CHECK(std::count(s.begin(), s.end(), '\n') == 5);
}
