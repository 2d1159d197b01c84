#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <vector>

namespace gbap {

// One cyclic factor of (Z/qZ)^*, written as the unit group of a prime power.
// For 2^k with k >= 3 the group is {+-1} x <5>, recorded as two factors
// sharing the same prime power.
struct CyclicFactor {
    std::uint64_t prime_power;
    std::uint64_t order;
    std::uint64_t generator;
};

struct GroupStructure;

// Dirichlet character in Conrey labelling, chi = chi_q(label, .).
//
// Values are held exactly: chi(n) = exp(2 pi i e(n) / order) where e(n) is
// stored for every unit residue. Floating values are derived on demand.
class DirichletCharacter {
public:
    std::uint64_t modulus() const { return q_; }
    std::uint64_t label() const { return label_; }
    std::uint64_t order() const { return order_; }
    std::uint64_t conductor() const { return conductor_; }
    // Conrey label of the primitive character mod conductor() inducing this one.
    std::uint64_t induced_from() const { return induced_from_; }

    bool is_principal() const { return label_ == 1; }
    bool is_real() const { return order_ <= 2; }
    bool is_primitive() const { return conductor_ == q_; }
    // True when chi(-1) = -1.
    bool is_odd() const { return odd_; }

    // Exponent e(n) in Z/order, or nullopt when gcd(n, q) > 1.
    std::optional<std::uint64_t> exponent(std::int64_t n) const;

    // Raw exponent table entry for a residue in [0, q); -1 off units.
    std::int64_t exponent_at(std::uint64_t residue) const { return exponents_[residue]; }

    std::complex<double> value(std::int64_t n) const;
    std::complex<double> conj_value(std::int64_t n) const { return std::conj(value(n)); }

    // Root of unity exp(2 pi i k / order).
    std::complex<double> root(std::uint64_t k) const { return roots_[k % order_]; }

    // Conrey label of the conjugate character.
    std::uint64_t conjugate_label() const;

private:
    friend DirichletCharacter make_character(std::uint64_t q, std::uint64_t label);
    friend class CharacterGroup;
    friend DirichletCharacter build_character(const GroupStructure& g, std::uint64_t label);

    std::uint64_t q_ = 1;
    std::uint64_t label_ = 1;
    std::uint64_t order_ = 1;
    std::uint64_t conductor_ = 1;
    std::uint64_t induced_from_ = 1;
    bool odd_ = false;
    std::vector<std::int64_t> exponents_;  // -1 at non-units
    std::vector<std::complex<double>> roots_;
};

// Builds chi_q(label, .). Throws std::invalid_argument unless q >= 1 and
// gcd(label, q) = 1 (label is read mod q; label 0 is allowed only for q = 1).
DirichletCharacter make_character(std::uint64_t q, std::uint64_t label);

// All phi(q) characters mod q in ascending label order.
class CharacterGroup {
public:
    explicit CharacterGroup(std::uint64_t q);

    std::uint64_t modulus() const { return q_; }
    std::uint64_t phi() const { return characters_.size(); }
    const std::vector<DirichletCharacter>& characters() const { return characters_; }
    const std::vector<CyclicFactor>& factors() const { return factors_; }

    const DirichletCharacter& by_label(std::uint64_t label) const;
    const DirichletCharacter& principal() const { return characters_.front(); }

    // Sum over chi of conj(chi(a)) chi(m), as an exact integer: phi(q) when
    // m = a (mod q), else 0. Requires gcd(a, q) = 1.
    std::int64_t orthogonality_exact(std::int64_t a, std::int64_t m) const;

    // Same sum evaluated in floating point from the derived values.
    std::complex<double> orthogonality_float(std::int64_t a, std::int64_t m) const;

    // CSV: label,order,conductor,principal,real,primitive,induced_from,parity,exponents
    void write_csv(std::ostream& out) const;

private:
    std::uint64_t q_;
    std::vector<CyclicFactor> factors_;
    std::vector<DirichletCharacter> characters_;
};

inline CharacterGroup enumerate_characters(std::uint64_t q) { return CharacterGroup(q); }

inline std::complex<double> char_value(const DirichletCharacter& chi, std::int64_t m) { return chi.value(m); }

struct ConductorInfo {
    std::uint64_t conductor;
    DirichletCharacter primitive;
};

ConductorInfo conductor_and_primitive(const DirichletCharacter& chi);

// Sum over chi mod q of conj(chi(a)) chi(m), float view. Throws when
// gcd(a, q) > 1.
std::complex<double> orthogonality_sum(std::uint64_t q, std::int64_t a, std::int64_t m);

} // namespace gbap
