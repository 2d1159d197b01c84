#pragma once

#include "gbap/characters.hpp"
#include "gbap/special.hpp"
#include "gbap/zeros.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>

namespace gbap {

// Synthetic exceptional real zero beta of L(s, chi~), chi~ = chi_q(label, .).
struct SiegelDatum {
    double beta = 0.0;
    std::uint64_t label = 1;
    std::uint64_t modulus = 1;

    // Throws std::invalid_argument unless 1/2 < beta < 1 and chi~ is real
    // and non-principal.
    void validate() const;
    DirichletCharacter character() const;
    std::string describe() const;
};

// Exponent b* per modulus in [1/2, 1]; 1/2 unless overridden.
class ExponentConfig {
public:
    explicit ExponentConfig(double fallback = 0.5);

    void set(std::uint64_t q, double b_star);
    void set_default(double b_star);
    double for_modulus(std::uint64_t q) const;
    double fallback() const { return fallback_; }

private:
    double fallback_;
    std::map<std::uint64_t, double> per_modulus_;
};

struct ZeroSumResult {
    double value = 0.0;
    // Imaginary part of the unpaired complex sum.
    double imag_residual = 0.0;
    std::size_t zero_count = 0;
};

// (1/phi(q)) sum_chi conj(chi(a)) sum_rho f(rho) over every stored zero of
// every chi mod q, conjugate zeros summed as pairs 2 Re[conj chi(a) f(rho)].
// f must satisfy f(conj z) = conj f(z). A Siegel datum with the same modulus
// adds chi~(a) f(beta~) / phi(q). Throws when the imaginary residue of the
// unpaired sum exceeds 1e-8 |value|.
ZeroSumResult weighted_zero_sum(const CharacterGroup& group, std::uint64_t a, const ZeroCatalog& zeros,
                                const SiegelDatum* siegel, const std::function<cplx(cplx)>& f);

// H(X, q, a) = -(1/phi(q)) sum_chi conj(chi(a)) sum_rho X^(rho+1) / (rho (rho+1)).
ZeroSumResult zero_sum_H(double X, const CharacterGroup& group, std::uint64_t a, const ZeroCatalog& zeros,
                         const SiegelDatum* siegel = nullptr);

// One side (q_i, a_i) of the pair term.
struct ZTermSide {
    const CharacterGroup& group;
    std::uint64_t a;
    const ZeroCatalog& zeros;
    const SiegelDatum* siegel = nullptr;
};

// Sum over pairs (rho1, rho2) with at least one member a Siegel zero of
// conj chi1(a1) conj chi2(a2) / (phi1 phi2) * Gamma(rho1) Gamma(rho2) /
// Gamma(rho1 + rho2 + 1) * X^(rho1 + rho2). Zero when neither side has a
// Siegel datum. Symmetric under swapping the two sides.
double zterm(double X, const ZTermSide& side1, const ZTermSide& side2);

} // namespace gbap
