#include "gbap/moments.hpp"

#include "gbap/parallel.hpp"
#include "gbap/summation.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gbap {

namespace {

constexpr std::size_t kBlocks = 16;

std::uint64_t floor_checked(const LambdaTable& table, double x, const char* what) {
    if (!(x >= 0.0) || x > 9.0e15) throw std::invalid_argument(std::string(what) + ": argument out of range");
    const auto n = static_cast<std::uint64_t>(std::floor(x));
    if (n > table.limit())
        throw std::out_of_range(std::string(what) + ": argument exceeds the sieve limit " +
                                std::to_string(table.limit()));
    return n;
}

// Piece [u, v] of a step function; c is its constant part.
struct Segment {
    double u, v, c;
};

// Siegel correction term chi~(a) t^beta / (phi beta), or none.
struct SiegelTerm {
    double coeff = 0.0;
    double beta = 0.0;
    bool active = false;

    double operator()(double t) const { return coeff * std::pow(t, beta); }
};

SiegelTerm make_siegel_term(const SiegelDatum* siegel, std::uint64_t q, std::uint64_t a, double phi) {
    SiegelTerm s;
    if (!siegel) return s;
    if (siegel->modulus != q) throw std::invalid_argument("Siegel datum belongs to another modulus");
    siegel->validate();
    s.active = true;
    s.beta = siegel->beta;
    s.coeff = siegel->character().value(static_cast<std::int64_t>(a)).real() / (phi * siegel->beta);
    return s;
}

double quad(const std::function<double(double)>& f, double u, double v) {
    if (v <= u) return 0.0;
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, u, v, 15, 1e-10, &err);
}

// Ordered blockwise sum of per-segment integrals.
double integrate_segments(const std::vector<Segment>& segs, const std::function<double(const Segment&)>& piece) {
    std::vector<double> partial(kBlocks, 0.0);
    parallel_for(kBlocks, [&](std::size_t b) {
        const std::size_t lo = segs.size() * b / kBlocks, hi = segs.size() * (b + 1) / kBlocks;
        CompensatedSum s;
        for (std::size_t i = lo; i < hi; ++i) s += piece(segs[i]);
        partial[b] = s.value();
    });
    CompensatedSum total;
    for (double v : partial) total += v;
    return total.value();
}

double log_sq(std::uint64_t q, double x) {
    const double l = std::log(static_cast<double>(q) * x);
    return l * l;
}

} // namespace

cplx psi_chi(const LambdaTable& table, double t, const DirichletCharacter& chi) {
    if (t < 2.0) return 0.0;
    const std::uint64_t n = floor_checked(table, t, "psi_chi");
    const std::uint64_t q = chi.modulus();
    std::vector<Fixed> cls(chi.order(), 0);
    for (const PrimePower& pp : table.prime_powers_upto(n)) {
        const std::int64_t e = chi.exponent_at(pp.n % q);
        if (e >= 0) cls[static_cast<std::size_t>(e)] += to_fixed(pp.lambda);
    }
    ComplexCompensatedSum s;
    for (std::size_t e = 0; e < cls.size(); ++e)
        if (cls[e] != 0) s += chi.root(e) * from_fixed(cls[e]);
    return s.value();
}

ExplicitPsi explicit_psi_chi(const LambdaTable& table, double t, double T, const DirichletCharacter& chi,
                             const ZeroCatalog& zeros) {
    if (!(t >= 2.0)) throw std::invalid_argument("explicit_psi_chi: t must be at least 2");
    if (!(T >= 0.0)) throw std::invalid_argument("explicit_psi_chi: T must be nonnegative");
    if (T > zeros.height()) throw std::runtime_error("explicit_psi_chi: missing zeros below T");
    const std::uint64_t n = floor_checked(table, t, "explicit_psi_chi");

    const ConductorInfo info = conductor_and_primitive(chi);
    const double lt = std::log(t);
    ComplexCompensatedSum zsum;
    std::size_t used = 0;
    for (const cplx& rho : zeros.zeros_of(chi)) {
        if (std::abs(rho.imag()) > T) continue;
        const cplx trho = std::exp(rho * lt);
        if (std::abs(rho.imag()) > 1.0)
            zsum += trho / rho;
        else
            zsum += (trho - 1.0) / rho;
        ++used;
    }
    cplx approx = (info.conductor == 1 ? t : 0.0) - zsum.value();

    if (!chi.is_primitive()) {
        // psi(t, chi) = psi(t, chi*) - sum_{(m, q) > 1} chi*(m) Lambda(m)
        ComplexCompensatedSum corr;
        for (const PrimePower& pp : table.prime_powers_upto(n))
            if (gcd(pp.n, chi.modulus()) != 1)
                corr += info.primitive.value(static_cast<std::int64_t>(pp.n)) * pp.lambda;
        approx -= corr.value();
    }

    ExplicitPsi out;
    out.approximation = approx;
    out.exact = psi_chi(table, t, chi);
    out.residual = approx - out.exact;
    out.zeros_used = used;
    return out;
}

MomentResult second_moment_H(const LambdaTable& table, double x, std::uint64_t q, std::uint64_t a,
                             const SiegelDatum* siegel, double b_star) {
    check_residue(q, a);
    a %= q;
    const std::uint64_t n = floor_checked(table, x, "second_moment_H");
    const double phi = static_cast<double>(euler_phi(q));
    const SiegelTerm st = make_siegel_term(siegel, q, a, phi);

    std::vector<Segment> segs;
    double u = 0.0;
    Fixed c = 0;
    for (const PrimePower& pp : table.prime_powers_upto(n)) {
        if (pp.n % q != a) continue;
        const auto j = static_cast<double>(pp.n);
        segs.push_back({u, j, from_fixed(c)});
        c += to_fixed(pp.lambda);
        u = j;
    }
    segs.push_back({u, x, from_fixed(c)});

    double value;
    if (!st.active) {
        value = integrate_segments(segs, [phi](const Segment& s) {
            const double A = s.c - s.u / phi, B = s.c - s.v / phi;
            return (s.v - s.u) * (A * A + A * B + B * B) / 3.0;
        });
    } else {
        value = integrate_segments(segs, [phi, &st](const Segment& s) {
            return quad(
                [&](double t) {
                    const double d = s.c - t / phi + st(t);
                    return d * d;
                },
                s.u, s.v);
        });
    }

    MomentResult r;
    r.value = value;
    r.x = x;
    r.q = q;
    r.a = a;
    r.siegel_active = st.active;
    r.b_star = b_star;
    r.segment_count = segs.size();
    const double denom = std::pow(x, 2.0 * b_star + 1.0) * log_sq(q, x);
    r.bound_ratio = q * x > 1.0 ? value / denom : std::numeric_limits<double>::quiet_NaN();
    return r;
}

MomentResult second_moment_K(const LambdaTable& table, double x, double h, std::uint64_t q, std::uint64_t a,
                             const SiegelDatum* siegel, double b_star) {
    check_residue(q, a);
    a %= q;
    if (!(h >= 1.0 && h <= x)) throw std::invalid_argument("second_moment_K: h must lie in [1, x]");
    const std::uint64_t top = floor_checked(table, x + h, "second_moment_K");
    const double phi = static_cast<double>(euler_phi(q));
    const SiegelTerm st = make_siegel_term(siegel, q, a, phi);

    std::vector<PrimePower> jumps;
    for (const PrimePower& pp : table.prime_powers_upto(top))
        if (pp.n % q == a) jumps.push_back(pp);

    // Sweep t over (0, x]: psi(t) jumps at j, psi(t + h) jumps at j - h.
    Fixed cA = 0, cB = 0;
    std::size_t ia = 0, ib = 0;
    while (ib < jumps.size() && static_cast<double>(jumps[ib].n) <= h) cB += to_fixed(jumps[ib++].lambda);

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<Segment> segs;
    double u = 0.0;
    for (;;) {
        const double ta = ia < jumps.size() ? static_cast<double>(jumps[ia].n) : inf;
        const double tb = ib < jumps.size() ? static_cast<double>(jumps[ib].n) - h : inf;
        const double te = std::min(ta, tb);
        if (!(te <= x)) break;
        segs.push_back({u, te, from_fixed(cB - cA) - h / phi});
        while (ia < jumps.size() && static_cast<double>(jumps[ia].n) == te) cA += to_fixed(jumps[ia++].lambda);
        while (ib < jumps.size() && static_cast<double>(jumps[ib].n) - h == te) cB += to_fixed(jumps[ib++].lambda);
        u = te;
    }
    segs.push_back({u, x, from_fixed(cB - cA) - h / phi});

    double value;
    if (!st.active) {
        value = integrate_segments(segs, [](const Segment& s) { return (s.v - s.u) * s.c * s.c; });
    } else {
        value = integrate_segments(segs, [h, &st](const Segment& s) {
            return quad(
                [&](double t) {
                    const double d = s.c + st(t + h) - st(t);
                    return d * d;
                },
                s.u, s.v);
        });
    }

    MomentResult r;
    r.value = value;
    r.x = x;
    r.h = h;
    r.q = q;
    r.a = a;
    r.siegel_active = st.active;
    r.b_star = b_star;
    r.segment_count = segs.size();
    const double denom = h * std::pow(x, 2.0 * b_star) * log_sq(q, x);
    r.bound_ratio = q * x > 1.0 ? value / denom : std::numeric_limits<double>::quiet_NaN();
    return r;
}

IdentityCheck sum_psi_progression(const LambdaTable& table, double X, std::uint64_t q, std::uint64_t a,
                                  const ZeroCatalog& zeros) {
    check_residue(q, a);
    a %= q;
    if (!(X >= 2.0)) throw std::invalid_argument("sum_psi_progression: X must be at least 2");
    const std::uint64_t N = floor_checked(table, X, "sum_psi_progression");

    // sum_{n <= N} psi(n - 1) = sum_{m <= N - 1} Lambda(m) (N - m), exact
    Fixed acc = 0;
    for (const PrimePower& pp : table.prime_powers_upto(N - 1))
        if (pp.n % q == a) acc += static_cast<Fixed>(N - pp.n) * to_fixed(pp.lambda);

    const CharacterGroup g(q);
    const double phi = static_cast<double>(g.phi());
    IdentityCheck r;
    r.lhs = from_fixed(acc);
    r.rhs = X * X / (2.0 * phi) + zero_sum_H(X, g, a, zeros).value;
    r.residual = r.lhs - r.rhs;
    r.ratio = r.residual / (X * std::log(2.0 * static_cast<double>(q)) * std::log(X));
    return r;
}

double weighted_beta_lhs(const LambdaTable& table, double X, std::uint64_t q, std::uint64_t a, double beta) {
    check_residue(q, a);
    a %= q;
    if (!(beta > 0.0 && beta <= 1.0)) throw std::invalid_argument("weighted_beta_lhs: beta must lie in (0, 1]");
    if (X < 3.0) return 0.0;
    const std::uint64_t N = floor_checked(table, X, "weighted_beta_lhs");

    // P[j] = sum_{k <= j} k^(beta - 1)
    std::vector<double> P(N + 1, 0.0);
    CompensatedSum run;
    for (std::uint64_t k = 1; k <= N; ++k) {
        run += std::pow(static_cast<double>(k), beta - 1.0);
        P[k] = run.value();
    }
    CompensatedSum s;
    for (const PrimePower& pp : table.prime_powers_upto(N - 1))
        if (pp.n % q == a) s += pp.lambda * P[N - pp.n];
    return s.value();
}

IdentityCheck weighted_beta_sum(const LambdaTable& table, double X, std::uint64_t q, std::uint64_t a, double beta,
                                const ZeroCatalog& zeros) {
    if (!(beta > 0.5 && beta < 1.0)) throw std::invalid_argument("weighted_beta_sum: beta must lie in (1/2, 1)");
    if (!(X >= 2.0)) throw std::invalid_argument("weighted_beta_sum: X must be at least 2");
    check_residue(q, a);
    a %= q;
    const CharacterGroup g(q);
    const double phi = static_cast<double>(g.phi());
    const ZeroSumResult zs =
        weighted_zero_sum(g, a, zeros, nullptr, [beta, X](cplx rho) { return beta_weight(cplx{beta, 0.0}, rho, X); });

    IdentityCheck r;
    r.lhs = weighted_beta_lhs(table, X, q, a, beta);
    r.rhs = std::pow(X, beta + 1.0) / (beta * (beta + 1.0) * phi) - zs.value;
    r.residual = r.lhs - r.rhs;
    r.ratio = r.residual / (X * std::log(2.0 * static_cast<double>(q)) * std::log(X));
    return r;
}

PowerSumReport power_sum_identities(double X, double beta, double beta1, double beta2) {
    for (double b : {beta, beta1, beta2})
        if (!(b > 0.5 && b < 1.0)) throw std::invalid_argument("power_sum_identities: exponents must lie in (1/2, 1)");
    if (!(X >= 2.0) || X > 1e9) throw std::invalid_argument("power_sum_identities: X out of range");
    const auto N = static_cast<std::uint64_t>(std::floor(X));

    std::vector<double> P2(N + 1, 0.0);
    CompensatedSum run;
    for (std::uint64_t k = 1; k <= N; ++k) {
        run += std::pow(static_cast<double>(k), beta2 - 1.0);
        P2[k] = run.value();
    }
    CompensatedSum l1, l2;
    for (std::uint64_t k = 1; k < N; ++k) {
        const auto dk = static_cast<double>(k);
        l1 += std::pow(dk, beta - 1.0) * static_cast<double>(N - k);
        l2 += std::pow(dk, beta1 - 1.0) * P2[N - k];
    }

    PowerSumReport r;
    r.X = X;
    r.beta = beta;
    r.beta1 = beta1;
    r.beta2 = beta2;
    r.lhs1 = l1.value();
    r.main1 = std::pow(X, beta + 1.0) / (beta * (beta + 1.0));
    r.ratio1 = std::abs(r.lhs1 - r.main1) / X;
    r.lhs2 = l2.value();
    r.main2 = beta_weight(cplx{beta1, 0.0}, cplx{beta2, 0.0}, X).real();
    r.ratio2 = std::abs(r.lhs2 - r.main2) / X;
    return r;
}

} // namespace gbap
