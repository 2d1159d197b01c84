#include "gbap/lfunction.hpp"

#include "gbap/summation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gbap {

namespace {

constexpr double kTailTolerance = 1e-14;
constexpr int kMaxDoublings = 10;

} // namespace

LEvaluator::LEvaluator(DirichletCharacter chi) : chi_(std::move(chi)) { log_n_.push_back(0.0); }

void LEvaluator::extend_logs(std::uint64_t n) {
    for (std::uint64_t k = log_n_.size(); k <= n; ++k) log_n_.push_back(std::log(static_cast<double>(k)));
}

cplx LEvaluator::operator()(cplx s) {
    if (std::abs(s.imag()) > kImagCeiling)
        throw std::domain_error("L-function: |Im s| beyond accuracy ceiling");
    const bool principal = chi_.is_principal();
    if (principal && s == cplx{1.0, 0.0}) throw std::domain_error("L-function: pole at s = 1");

    const std::uint64_t q = chi_.modulus();
    const double sigma = s.real(), t = s.imag();
    auto m = static_cast<std::uint64_t>(std::max(20.0, std::ceil(std::abs(t) / 2.0)));

    for (int attempt = 0; attempt <= kMaxDoublings; ++attempt, m *= 2) {
        const std::uint64_t top = m * q;
        extend_logs(top);

        // Direct part: sum_{n <= M q} chi(n) n^-s, largest n first.
        ComplexCompensatedSum direct;
        for (std::uint64_t n = top; n >= 1; --n) {
            const std::int64_t e = chi_.exponent_at(n % q);
            if (e < 0) continue;
            const double ln = log_n_[n];
            const double mag = std::exp(-sigma * ln);
            direct += chi_.root(static_cast<std::uint64_t>(e)) * cplx{mag * std::cos(t * ln), -mag * std::sin(t * ln)};
        }

        // Tails: q^-s [w^(1-s)/(s-1) + w^-s/2 + sum_j B_2j/(2j)! (s)_{2j-1} w^(-s-2j+1)].
        // For non-principal chi the pole piece uses (w^(1-s) - 1)/(s-1); the
        // constant cancels over a because sum_a chi(a) = 0.
        ComplexCompensatedSum tail;
        double err = 0.0;
        const cplx q_ms = std::exp(-s * std::log(static_cast<double>(q)));
        for (std::uint64_t a = 1; a <= q; ++a) {
            const std::int64_t e = chi_.exponent_at(a % q);
            if (e < 0) continue;
            const double w = static_cast<double>(m) + static_cast<double>(a) / static_cast<double>(q);
            const double lw = std::log(w);
            const cplx wms = std::exp(-s * lw);
            cplx pole;
            if (principal)
                pole = w * wms / (s - 1.0);
            else
                pole = -lw * expm1_over((1.0 - s) * lw);
            cplx acc = pole + 0.5 * wms;
            cplx rising = s;
            double wpow = 1.0 / w;
            for (int j = 0; j < 12; ++j) {
                acc += kBernoulliOverFactorial[j] * rising * wpow * wms;
                rising *= (s + static_cast<double>(2 * j + 1)) * (s + static_cast<double>(2 * j + 2));
                wpow /= w * w;
            }
            err += std::abs(kBernoulliOverFactorial[12] * rising * wpow * wms * q_ms);
            tail += chi_.root(static_cast<std::uint64_t>(e)) * q_ms * acc;
        }

        const cplx result = direct.value() + tail.value();
        if (err <= kTailTolerance * std::max(1.0, std::abs(result))) return result;
    }
    throw std::domain_error("L-function: Euler-Maclaurin accuracy target not met");
}

cplx evaluate_L(cplx s, const DirichletCharacter& chi) {
    LEvaluator eval(chi);
    return eval(s);
}

cplx gauss_sum(const DirichletCharacter& chi) {
    const std::uint64_t q = chi.modulus();
    ComplexCompensatedSum s;
    for (std::uint64_t a = 1; a <= q; ++a) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(a) / static_cast<double>(q);
        s += chi.value(static_cast<std::int64_t>(a)) * cplx{std::cos(angle), std::sin(angle)};
    }
    return s.value();
}

cplx root_number(const DirichletCharacter& chi) {
    if (!chi.is_primitive()) throw std::invalid_argument("root_number: character must be primitive");
    const cplx i_kappa = chi.is_odd() ? cplx{0.0, 1.0} : cplx{1.0, 0.0};
    return gauss_sum(chi) / (i_kappa * std::sqrt(static_cast<double>(chi.modulus())));
}

cplx completed_L(cplx s, const DirichletCharacter& chi) {
    if (!chi.is_primitive()) throw std::invalid_argument("completed_L: character must be primitive");
    const double kappa = chi.is_odd() ? 1.0 : 0.0;
    const cplx half = (s + kappa) / 2.0;
    const double q = static_cast<double>(chi.modulus());
    return std::exp(half * std::log(q / std::numbers::pi) + log_gamma(half)) * evaluate_L(s, chi);
}

HardyZ::HardyZ(const DirichletCharacter& primitive) : eval_(primitive) {
    if (!primitive.is_primitive()) throw std::invalid_argument("HardyZ: character must be primitive");
    inv_sqrt_eps_ = 1.0 / std::sqrt(root_number(primitive));
    kappa_ = primitive.is_odd() ? 1.0 : 0.0;
    log_q_over_pi_ = std::log(static_cast<double>(primitive.modulus()) / std::numbers::pi);
}

double HardyZ::theta(double t) const {
    return 0.5 * t * log_q_over_pi_ + log_gamma(cplx{(0.5 + kappa_) / 2.0, t / 2.0}).imag();
}

cplx HardyZ::rotated(double t) {
    const double th = theta(t);
    return inv_sqrt_eps_ * cplx{std::cos(th), std::sin(th)} * eval_(cplx{0.5, t});
}

} // namespace gbap
