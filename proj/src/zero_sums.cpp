#include "gbap/zero_sums.hpp"

#include "gbap/arith.hpp"
#include "gbap/summation.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gbap {

void SiegelDatum::validate() const {
    if (!(beta > 0.5 && beta < 1.0)) throw std::invalid_argument("siegel datum: beta must lie in (1/2, 1)");
    const DirichletCharacter chi = character();
    if (chi.is_principal() || !chi.is_real())
        throw std::invalid_argument("siegel datum: character must be real and non-principal");
}

DirichletCharacter SiegelDatum::character() const { return make_character(modulus, label); }

std::string SiegelDatum::describe() const {
    std::ostringstream o;
    o.precision(17);
    o << beta << ':' << label << ':' << modulus;
    return o.str();
}

ExponentConfig::ExponentConfig(double fallback) : fallback_(0.5) { set_default(fallback); }

void ExponentConfig::set(std::uint64_t q, double b_star) {
    if (!(b_star >= 0.5 && b_star <= 1.0)) throw std::invalid_argument("b* must lie in [1/2, 1]");
    per_modulus_[q] = b_star;
}

void ExponentConfig::set_default(double b_star) {
    if (!(b_star >= 0.5 && b_star <= 1.0)) throw std::invalid_argument("b* must lie in [1/2, 1]");
    fallback_ = b_star;
}

double ExponentConfig::for_modulus(std::uint64_t q) const {
    auto it = per_modulus_.find(q);
    return it == per_modulus_.end() ? fallback_ : it->second;
}

ZeroSumResult weighted_zero_sum(const CharacterGroup& group, std::uint64_t a, const ZeroCatalog& zeros,
                                const SiegelDatum* siegel, const std::function<cplx(cplx)>& f) {
    const std::uint64_t q = group.modulus();
    if (gcd(a, q) != 1 && q != 1) throw std::invalid_argument("zero sum: residue is not a unit");
    zeros.height();  // throws on mixed truncation heights

    CompensatedSum paired;
    ComplexCompensatedSum direct;
    double scale = 0.0;
    std::size_t count = 0;
    for (const DirichletCharacter& chi : group.characters()) {
        const cplx cbar = chi.conj_value(static_cast<std::int64_t>(a));
        for (const Zero& z : zeros.upper_zeros(chi)) {
            const cplx v = cbar * f(z.rho());
            paired += 2.0 * v.real();
            scale += 2.0 * std::abs(v);
        }
        for (const cplx& rho : zeros.zeros_of(chi)) {
            direct += cbar * f(rho);
            ++count;
        }
    }
    if (siegel) {
        if (siegel->modulus != q) throw std::invalid_argument("zero sum: Siegel datum belongs to another modulus");
        siegel->validate();
        const double c = siegel->character().value(static_cast<std::int64_t>(a)).real();
        const cplx v = c * f(cplx{siegel->beta, 0.0});
        paired += v.real();
        direct += v;
        scale += std::abs(v);
        ++count;
    }

    const double phi = static_cast<double>(group.phi());
    ZeroSumResult out;
    out.value = paired.value() / phi;
    out.imag_residual = direct.value().imag() / phi;
    out.zero_count = count;
    if (std::abs(out.imag_residual) > 1e-8 * std::abs(out.value) + 1e-13 * scale / phi)
        throw std::runtime_error("zero sum: imaginary residue too large (asymmetric zero data?)");
    return out;
}

ZeroSumResult zero_sum_H(double X, const CharacterGroup& group, std::uint64_t a, const ZeroCatalog& zeros,
                         const SiegelDatum* siegel) {
    if (!(X > 0.0)) throw std::invalid_argument("zero_sum_H: X must be positive");
    const double lx = std::log(X);
    ZeroSumResult r = weighted_zero_sum(group, a, zeros, siegel,
                                        [lx](cplx rho) { return std::exp((rho + 1.0) * lx) / (rho * (rho + 1.0)); });
    r.value = -r.value;
    r.imag_residual = -r.imag_residual;
    return r;
}

namespace {

// Pairs (beta~ of `own`, rho of every chi on `other`).
double siegel_family(double X, const ZTermSide& own, const ZTermSide& other) {
    const SiegelDatum& s = *own.siegel;
    if (s.modulus != own.group.modulus()) throw std::invalid_argument("zterm: Siegel datum modulus mismatch");
    s.validate();
    const double c = s.character().value(static_cast<std::int64_t>(own.a)).real();
    const double beta = s.beta;
    const ZeroSumResult r = weighted_zero_sum(other.group, other.a, other.zeros, nullptr,
                                              [beta, X](cplx rho) { return beta_weight(cplx{beta, 0.0}, rho, X); });
    return c * r.value / static_cast<double>(own.group.phi());
}

} // namespace

double zterm(double X, const ZTermSide& side1, const ZTermSide& side2) {
    if (!(X > 0.0)) throw std::invalid_argument("zterm: X must be positive");
    double f1 = 0.0, f2 = 0.0, pair = 0.0;
    if (side1.siegel) f1 = siegel_family(X, side1, side2);
    if (side2.siegel) f2 = siegel_family(X, side2, side1);
    if (side1.siegel && side2.siegel) {
        const double c1 = side1.siegel->character().value(static_cast<std::int64_t>(side1.a)).real();
        const double c2 = side2.siegel->character().value(static_cast<std::int64_t>(side2.a)).real();
        const double w = beta_weight(cplx{side1.siegel->beta, 0.0}, cplx{side2.siegel->beta, 0.0}, X).real();
        pair = c1 * c2 * w / (static_cast<double>(side1.group.phi()) * static_cast<double>(side2.group.phi()));
    }
    return (f1 + f2) + pair;
}

} // namespace gbap
