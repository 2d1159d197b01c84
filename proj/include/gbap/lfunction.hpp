#pragma once

#include "gbap/characters.hpp"
#include "gbap/special.hpp"

#include <vector>

namespace gbap {

// Largest |Im s| at which L-values are produced.
inline constexpr double kImagCeiling = 1.0e4;

// Evaluates L(s, chi) = q^-s sum_a chi(a) zeta(s, a/q). The Hurwitz sums are
// split into a direct part over n <= M q and Euler-Maclaurin tails at
// w = M + a/q, M = max(20, ceil(|Im s| / 2)); M is doubled until the next
// Bernoulli term is below the target. Logs of n are cached between calls, so
// one evaluator per character is cheap to reuse along a line.
class LEvaluator {
public:
    explicit LEvaluator(DirichletCharacter chi);

    const DirichletCharacter& character() const { return chi_; }

    // Throws std::domain_error at the pole of a principal character or when
    // |Im s| exceeds kImagCeiling.
    cplx operator()(cplx s);

private:
    void extend_logs(std::uint64_t n);

    DirichletCharacter chi_;
    std::vector<double> log_n_;
};

cplx evaluate_L(cplx s, const DirichletCharacter& chi);

// sum_a chi(a) e(a/q).
cplx gauss_sum(const DirichletCharacter& chi);

// epsilon(chi) in Lambda(s, chi) = epsilon(chi) Lambda(1 - s, conj chi), for
// primitive chi: tau(chi) / (i^kappa sqrt(q)).
cplx root_number(const DirichletCharacter& chi);

// Lambda(s, chi) = (q/pi)^((s+kappa)/2) Gamma((s+kappa)/2) L(s, chi), primitive chi.
cplx completed_L(cplx s, const DirichletCharacter& chi);

// Completed L-function on the critical line, rotated to be real:
// Z(t) = epsilon^-1/2 exp(i theta(t)) L(1/2 + it, chi), with exp(i theta)
// the phase of the Gamma-and-conductor factor. |Z(t)| = |L(1/2 + it)|.
class HardyZ {
public:
    explicit HardyZ(const DirichletCharacter& primitive);

    const DirichletCharacter& character() const { return eval_.character(); }

    double theta(double t) const;
    // Complex rotated value; its imaginary part is rounding noise.
    cplx rotated(double t);
    double operator()(double t) { return rotated(t).real(); }

private:
    LEvaluator eval_;
    cplx inv_sqrt_eps_;
    double kappa_;
    double log_q_over_pi_;
};

} // namespace gbap
