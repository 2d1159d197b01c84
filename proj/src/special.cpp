#include "gbap/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gbap {

const double kBernoulliOverFactorial[13] = {
    8.33333333333333287e-02,  -1.38888888888888894e-03, 3.30687830687830710e-05,  -8.26719576719576754e-07,
    2.08767569878681002e-08,  -5.28419013868749322e-10, 1.33825365306846789e-11,  -3.38968029632258272e-13,
    8.58606205627784517e-15,  -2.17486869855806192e-16, 5.50900282836022953e-18,  -1.39544646858125223e-19,
    3.53470703962946728e-21,
};

namespace {

constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

const double kHalfLog2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

cplx lanczos(cplx z) {
    z -= 1.0;
    cplx x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    const cplx t = z + kLanczosG + 0.5;
    return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

// log sin(pi z) without overflow for large |Im z|.
cplx log_sin_pi(cplx z) {
    const double pi = std::numbers::pi;
    const cplx i{0.0, 1.0};
    if (std::abs(z.imag()) < 20.0) return std::log(std::sin(pi * z));
    if (z.imag() > 0) return -i * pi * z + std::log((std::exp(2.0 * i * pi * z) - 1.0) / (2.0 * i));
    return i * pi * z + std::log((1.0 - std::exp(-2.0 * i * pi * z)) / (2.0 * i));
}

} // namespace

cplx log_gamma(cplx z) {
    if (z.real() >= 0.5) return lanczos(z);
    if (z.imag() == 0.0 && z.real() == std::floor(z.real()))
        throw std::domain_error("log_gamma: pole at non-positive integer");
    if (z.real() > -20.0) {
        const int k = static_cast<int>(std::ceil(0.5 - z.real()));
        cplx acc = 0.0;
        for (int j = 0; j < k; ++j) acc += std::log(z + static_cast<double>(j));
        return lanczos(z + static_cast<double>(k)) - acc;
    }
    return std::log(std::numbers::pi) - log_sin_pi(z) - lanczos(1.0 - z);
}

cplx beta_weight(cplx a, cplx b, double x) {
    return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b + 1.0) + (a + b) * std::log(x));
}

cplx expm1_over(cplx z) {
    if (std::abs(z) < 1e-3) {
        // 1 + z/2 + z^2/6 + z^3/24 + z^4/120
        return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z / 120.0)));
    }
    return (std::exp(z) - 1.0) / z;
}

cplx hurwitz_zeta(cplx s, double a) {
    if (s == cplx{1.0, 0.0}) throw std::domain_error("hurwitz_zeta: pole at s = 1");
    if (!(a > 0.0)) throw std::domain_error("hurwitz_zeta: a must be positive");

    const double tol = 1e-15;
    auto n_terms = static_cast<long>(std::max(20.0, std::ceil(std::abs(s.imag()) / 2.0)));
    for (int attempt = 0; attempt < 12; ++attempt, n_terms *= 2) {
        cplx direct = 0.0;
        for (long k = n_terms - 1; k >= 0; --k) direct += std::exp(-s * std::log(static_cast<double>(k) + a));

        const double w = static_cast<double>(n_terms) + a;
        const cplx wms = std::exp(-s * std::log(w));
        cplx tail = w * wms / (s - 1.0) + 0.5 * wms;
        cplx rising = s;  // (s)_{2j-1}
        double wpow = 1.0 / w;
        cplx term;
        for (int j = 0; j < 12; ++j) {
            term = kBernoulliOverFactorial[j] * rising * wpow * wms;
            tail += term;
            rising *= (s + static_cast<double>(2 * j + 1)) * (s + static_cast<double>(2 * j + 2));
            wpow /= w * w;
        }
        const double next = std::abs(kBernoulliOverFactorial[12] * rising * wpow * wms);
        const cplx result = direct + tail;
        if (next <= tol * std::max(1.0, std::abs(result))) return result;
    }
    throw std::domain_error("hurwitz_zeta: Euler-Maclaurin accuracy target not met");
}

} // namespace gbap
