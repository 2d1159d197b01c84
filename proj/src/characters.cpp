#include "gbap/characters.hpp"

#include "gbap/arith.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gbap {

namespace {

enum class ComponentKind { odd, four, two_high };

struct Component {
    ComponentKind kind;
    std::uint64_t pp;    // prime power
    std::uint64_t cyc;   // order of the cyclic (log) part
    std::uint64_t gen;
    std::vector<std::int64_t> log;  // discrete log of the cyclic part, -1 off units
};

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    unsigned __int128 r = 1 % m, x = b % m;
    while (e) {
        if (e & 1) r = r * x % m;
        x = x * x % m;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(r);
}

// Least primitive root mod p^2; it generates (Z/p^k)^* for every k.
std::uint64_t conrey_generator(std::uint64_t p) {
    const auto factors = factorize(p - 1);
    for (std::uint64_t g = 2;; ++g) {
        bool prim = std::all_of(factors.begin(), factors.end(),
                                [&](const PrimeFactor& f) { return powmod(g, (p - 1) / f.p, p) != 1; });
        if (prim && powmod(g, p - 1, p * p) != 1) return g;
    }
}

std::complex<double> unit_root(std::uint64_t k, std::uint64_t n) {
    k %= n;
    if (4 * k % n == 0) {
        switch (4 * k / n) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
        }
    }
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    return {std::cos(angle), std::sin(angle)};
}

} // namespace

struct GroupStructure {
    std::uint64_t q = 1;
    std::uint64_t lambda = 1;  // common denominator for exponents
    std::vector<Component> components;
    std::vector<CyclicFactor> factors;

    explicit GroupStructure(std::uint64_t modulus) : q(modulus) {
        if (q == 0) throw std::invalid_argument("characters: modulus must be >= 1");
        for (auto [p, e] : factorize(q)) {
            std::uint64_t pp = 1;
            for (int i = 0; i < e; ++i) pp *= p;
            if (p == 2 && e == 1) continue;
            Component c;
            c.pp = pp;
            c.log.assign(pp, -1);
            if (p != 2) {
                c.kind = ComponentKind::odd;
                c.cyc = pp / p * (p - 1);
                c.gen = conrey_generator(p);
                std::uint64_t x = 1;
                for (std::uint64_t k = 0; k < c.cyc; ++k) {
                    c.log[x] = static_cast<std::int64_t>(k);
                    x = x * c.gen % pp;
                }
                factors.push_back({pp, c.cyc, c.gen});
            } else if (e == 2) {
                c.kind = ComponentKind::four;
                c.cyc = 1;
                c.gen = 1;
                c.log[1] = 0;
                c.log[3] = 0;
                factors.push_back({4, 2, 3});
            } else {
                c.kind = ComponentKind::two_high;
                c.cyc = pp / 4;
                c.gen = 5;
                std::uint64_t x = 1;
                for (std::uint64_t k = 0; k < c.cyc; ++k) {
                    c.log[x] = static_cast<std::int64_t>(k);
                    c.log[pp - x] = static_cast<std::int64_t>(k);
                    x = x * 5 % pp;
                }
                factors.push_back({pp, 2, pp - 1});
                factors.push_back({pp, c.cyc, 5});
            }
            lambda = std::lcm(lambda, c.cyc);
            if (c.kind != ComponentKind::odd) lambda = std::lcm(lambda, std::uint64_t{2});
            components.push_back(std::move(c));
        }
    }

    // Exponent of chi_q(m, n) in units of 1/lambda, for units m, n.
    std::uint64_t pairing(std::uint64_t m, std::uint64_t n) const {
        std::uint64_t total = 0;
        for (const auto& c : components) {
            const std::uint64_t mr = m % c.pp, nr = n % c.pp;
            if (c.kind != ComponentKind::odd && mr % 4 == 3 && nr % 4 == 3) total += lambda / 2;
            if (c.kind != ComponentKind::four) {
                auto lm = static_cast<std::uint64_t>(c.log[mr]);
                auto ln = static_cast<std::uint64_t>(c.log[nr]);
                total += static_cast<std::uint64_t>(static_cast<unsigned __int128>(lm) * ln % c.cyc) * (lambda / c.cyc);
            }
            total %= lambda;
        }
        return total;
    }
};

namespace {

// Label u mod f with chi_f(u, n) = chi(n) on every unit n mod chi's modulus.
// Not label mod f in general: for p^e the inducer of g^(p a) is g^a.
std::uint64_t primitive_label(const DirichletCharacter& chi, std::uint64_t f) {
    if (f == 1) return 1;
    const GroupStructure gf(f);
    const std::uint64_t q = chi.modulus();
    const auto order = static_cast<unsigned __int128>(chi.order());
    for (std::uint64_t u = 1; u < f; ++u) {
        if (gcd(u, f) != 1) continue;
        bool match = true;
        for (std::uint64_t n = 1; n < q && match; ++n) {
            const std::int64_t e = chi.exponent_at(n);
            if (e < 0) continue;
            // e / order == pairing / lambda_f as fractions of a turn
            const auto lhs = static_cast<unsigned __int128>(e) * gf.lambda;
            const auto rhs = static_cast<unsigned __int128>(gf.pairing(u, n % f)) * order;
            match = lhs % (order * gf.lambda) == rhs % (order * gf.lambda);
        }
        if (match) return u;
    }
    throw std::logic_error("characters: no inducing character found");
}

} // namespace

DirichletCharacter build_character(const GroupStructure& g, std::uint64_t label) {
    const std::uint64_t q = g.q;
    DirichletCharacter chi;
    chi.q_ = q;
    chi.label_ = q == 1 ? 1 : label % q;
    if (gcd(chi.label_, q) != 1)
        throw std::invalid_argument("characters: label " + std::to_string(label) + " not coprime to " +
                                    std::to_string(q));

    std::vector<std::int64_t> raw(q, -1);
    std::uint64_t common = g.lambda;
    for (std::uint64_t n = 0; n < q; ++n) {
        if (gcd(n, q) != 1) continue;
        std::uint64_t e = g.pairing(chi.label_, n);
        raw[n] = static_cast<std::int64_t>(e);
        common = std::gcd(common, e);
    }
    if (q == 1) raw[0] = 0;
    const std::uint64_t step = common == 0 ? g.lambda : common;
    chi.order_ = g.lambda / step;
    chi.exponents_.assign(q, -1);
    for (std::uint64_t n = 0; n < q; ++n)
        if (raw[n] >= 0) chi.exponents_[n] = raw[n] / static_cast<std::int64_t>(step);
    chi.roots_.resize(chi.order_);
    for (std::uint64_t k = 0; k < chi.order_; ++k) chi.roots_[k] = unit_root(k, chi.order_);

    chi.odd_ = q > 2 && chi.exponents_[q - 1] != 0;

    // Conductor: least f | q with chi trivial on units = 1 (mod f).
    chi.conductor_ = q;
    for (std::uint64_t f = 1; f < q; ++f) {
        if (q % f != 0) continue;
        bool trivial = true;
        for (std::uint64_t n = 1 % q; n < q && trivial; n += f)
            if (chi.exponents_[n] > 0) trivial = false;
        if (trivial) {
            chi.conductor_ = f;
            break;
        }
    }
    chi.induced_from_ = chi.conductor_ == q ? chi.label_ : primitive_label(chi, chi.conductor_);
    return chi;
}

std::optional<std::uint64_t> DirichletCharacter::exponent(std::int64_t n) const {
    std::int64_t e = exponents_[reduce_residue(n, q_)];
    if (e < 0) return std::nullopt;
    return static_cast<std::uint64_t>(e);
}

std::complex<double> DirichletCharacter::value(std::int64_t n) const {
    std::int64_t e = exponents_[reduce_residue(n, q_)];
    if (e < 0) return {0.0, 0.0};
    return roots_[static_cast<std::size_t>(e)];
}

std::uint64_t DirichletCharacter::conjugate_label() const { return q_ == 1 ? 1 : mod_inverse(label_, q_); }

DirichletCharacter make_character(std::uint64_t q, std::uint64_t label) {
    GroupStructure g(q);
    return build_character(g, label);
}

CharacterGroup::CharacterGroup(std::uint64_t q) : q_(q) {
    GroupStructure g(q);
    factors_ = g.factors;
    for (std::uint64_t m = 1; m <= std::max<std::uint64_t>(q, 1); ++m) {
        if (q > 1 && m == q) break;
        if (gcd(m, q) == 1) characters_.push_back(build_character(g, m));
    }
}

const DirichletCharacter& CharacterGroup::by_label(std::uint64_t label) const {
    std::uint64_t l = q_ == 1 ? 1 : label % q_;
    auto it = std::lower_bound(characters_.begin(), characters_.end(), l,
                               [](const DirichletCharacter& c, std::uint64_t v) { return c.label() < v; });
    if (it == characters_.end() || it->label() != l)
        throw std::invalid_argument("characters: no character with label " + std::to_string(label) + " mod " +
                                    std::to_string(q_));
    return *it;
}

std::int64_t CharacterGroup::orthogonality_exact(std::int64_t a, std::int64_t m) const {
    if (gcd(reduce_residue(a, q_), q_) != 1) throw std::invalid_argument("orthogonality: gcd(a, q) > 1");
    // Sum of exp(2 pi i (e(m) - e(a)) / order) over the group; evaluated by
    // bucketing exponents over the common denominator so no rounding enters.
    auto em = characters_.front().exponent(m);
    if (!em) return 0;
    std::uint64_t lam = 1;
    for (const auto& chi : characters_) lam = std::lcm(lam, chi.order());
    std::vector<std::int64_t> bucket(lam, 0);
    for (const auto& chi : characters_) {
        std::uint64_t d = (*chi.exponent(m) + chi.order() - *chi.exponent(a)) % chi.order();
        bucket[d * (lam / chi.order())] += 1;
    }
    // chi -> chi(m / a) is a homomorphism onto the k-th roots of unity for
    // some k, each hit phi/k times. The sum is phi when k = 1 and exactly 0
    // otherwise; the bucket layout is checked rather than assumed.
    const auto phi = static_cast<std::int64_t>(characters_.size());
    if (bucket[0] == phi) return phi;
    std::uint64_t k = 0;
    for (auto b : bucket)
        if (b != 0) ++k;
    if (lam % k != 0 || phi % static_cast<std::int64_t>(k) != 0)
        throw std::logic_error("orthogonality: character values do not form a subgroup");
    for (std::uint64_t j = 0; j < k; ++j)
        if (bucket[j * (lam / k)] != phi / static_cast<std::int64_t>(k))
            throw std::logic_error("orthogonality: character values not equidistributed");
    return 0;
}

std::complex<double> CharacterGroup::orthogonality_float(std::int64_t a, std::int64_t m) const {
    if (gcd(reduce_residue(a, q_), q_) != 1) throw std::invalid_argument("orthogonality: gcd(a, q) > 1");
    ComplexCompensatedSum s;
    for (const auto& chi : characters_) s += chi.conj_value(a) * chi.value(m);
    return s.value();
}

void CharacterGroup::write_csv(std::ostream& out) const {
    out << "label,order,conductor,principal,real,primitive,induced_from,parity,exponents\n";
    for (const auto& chi : characters_) {
        out << chi.label() << ',' << chi.order() << ',' << chi.conductor() << ',' << chi.is_principal() << ','
            << chi.is_real() << ',' << chi.is_primitive() << ',' << chi.induced_from() << ','
            << (chi.is_odd() ? "odd" : "even") << ',';
        for (std::uint64_t n = 0; n < q_; ++n) {
            if (n) out << ' ';
            auto e = chi.exponent(static_cast<std::int64_t>(n));
            if (e)
                out << *e;
            else
                out << '-';
        }
        out << '\n';
    }
}

ConductorInfo conductor_and_primitive(const DirichletCharacter& chi) {
    return {chi.conductor(), make_character(chi.conductor(), chi.induced_from())};
}

std::complex<double> orthogonality_sum(std::uint64_t q, std::int64_t a, std::int64_t m) {
    return CharacterGroup(q).orthogonality_float(a, m);
}

} // namespace gbap
