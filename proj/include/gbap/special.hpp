#pragma once

#include <complex>

namespace gbap {

using cplx = std::complex<double>;

// log Gamma(z) by the Lanczos approximation (g = 7, 9 terms), with the
// recurrence / reflection formula for Re z < 1/2. The imaginary part is only
// determined mod 2 pi. Throws std::domain_error at poles.
cplx log_gamma(cplx z);

inline cplx gamma(cplx z) { return std::exp(log_gamma(z)); }

// Gamma(a) Gamma(b) / Gamma(a + b + 1) * x^(a + b), through log-Gamma
// differences so that large |Im| does not overflow.
cplx beta_weight(cplx a, cplx b, double x);

// Hurwitz zeta(s, a) for a > 0 by Euler-Maclaurin with Bernoulli corrections
// through B_24. Throws std::domain_error at s = 1.
cplx hurwitz_zeta(cplx s, double a);

// Euler-Maclaurin constants B_{2j} / (2j)!, j = 1..13.
extern const double kBernoulliOverFactorial[13];

// (e^z - 1) / z, accurate near 0.
cplx expm1_over(cplx z);

} // namespace gbap
