#include "gbap/goldbach.hpp"

#include "gbap/parallel.hpp"
#include "gbap/summation.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gbap {

namespace {

constexpr std::size_t kBlocks = 16;

std::vector<PrimePower> progression_powers(const LambdaTable& table, std::uint64_t bound, std::uint64_t q,
                                           std::uint64_t a) {
    std::vector<PrimePower> out;
    for (const PrimePower& pp : table.prime_powers_upto(bound))
        if (pp.n % q == a) out.push_back(pp);
    return out;
}

void require_limit(const LambdaTable& table, std::uint64_t n, const char* what) {
    if (n > table.limit())
        throw std::out_of_range(std::string(what) + ": argument exceeds the sieve limit " +
                                std::to_string(table.limit()));
}

std::uint64_t floor_u64(double x) {
    if (!(x >= 0.0) || x > 9.0e15) throw std::invalid_argument("argument out of range");
    return static_cast<std::uint64_t>(std::floor(x));
}

} // namespace

void GoldbachConfig::normalize() {
    check_residue(q1, a1);
    check_residue(q2, a2);
    a1 %= q1;
    a2 %= q2;
    if (!(X >= 2.0)) throw std::invalid_argument("X must be at least 2");
    if (!(T >= 0.0)) throw std::invalid_argument("T must be nonnegative");
    if (siegel1) {
        if (siegel1->modulus != q1) throw std::invalid_argument("Siegel datum for q1 has another modulus");
        siegel1->validate();
    }
    if (siegel2) {
        if (siegel2->modulus != q2) throw std::invalid_argument("Siegel datum for q2 has another modulus");
        siegel2->validate();
    }
}

double goldbach_G(const LambdaTable& table, std::uint64_t n, std::uint64_t q1, std::uint64_t q2, std::uint64_t a1,
                  std::uint64_t a2) {
    check_residue(q1, a1);
    check_residue(q2, a2);
    a1 %= q1;
    a2 %= q2;
    if (n < 4) return 0.0;
    require_limit(table, n - 2, "goldbach_G");
    CompensatedSum g;
    for (const PrimePower& m : table.prime_powers_upto(n - 2)) {
        if (m.n % q1 != a1) continue;
        const std::uint64_t l = n - m.n;
        if (l % q2 != a2) continue;
        const double ll = table(l);
        if (ll != 0.0) g += m.lambda * ll;
    }
    return g.value();
}

std::vector<double> goldbach_G_table(const LambdaTable& table, std::uint64_t N, std::uint64_t q1, std::uint64_t q2,
                                     std::uint64_t a1, std::uint64_t a2) {
    check_residue(q1, a1);
    check_residue(q2, a2);
    a1 %= q1;
    a2 %= q2;
    std::vector<double> G(N + 1, 0.0);
    if (N < 4) return G;
    require_limit(table, N - 2, "goldbach_G_table");
    const auto p1 = progression_powers(table, N - 2, q1, a1);
    const auto p2 = progression_powers(table, N - 2, q2, a2);

    std::vector<std::vector<double>> partial(kBlocks);
    parallel_for(kBlocks, [&](std::size_t b) {
        const std::size_t lo = p1.size() * b / kBlocks, hi = p1.size() * (b + 1) / kBlocks;
        if (lo == hi) return;
        auto& acc = partial[b];
        acc.assign(N + 1, 0.0);
        for (std::size_t i = lo; i < hi; ++i) {
            const PrimePower& m = p1[i];
            for (const PrimePower& l : p2) {
                if (m.n + l.n > N) break;
                acc[m.n + l.n] += m.lambda * l.lambda;
            }
        }
    });
    for (const auto& acc : partial)
        if (!acc.empty())
            for (std::uint64_t n = 0; n <= N; ++n) G[n] += acc[n];
    return G;
}

double summatory_S(const LambdaTable& table, const GoldbachConfig& config) {
    GoldbachConfig c = config;
    c.normalize();
    const std::uint64_t N = floor_u64(c.X);
    require_limit(table, N, "summatory_S");
    const ProgressionPrefix psi2(table, c.q2, c.a2);
    const auto p1 = progression_powers(table, N, c.q1, c.a1);

    std::vector<double> partial(kBlocks, 0.0);
    parallel_for(kBlocks, [&](std::size_t b) {
        const std::size_t lo = p1.size() * b / kBlocks, hi = p1.size() * (b + 1) / kBlocks;
        CompensatedSum s;
        for (std::size_t i = lo; i < hi; ++i)
            s += p1[i].lambda * psi2(static_cast<std::int64_t>(N - p1[i].n));
        partial[b] = s.value();
    });
    CompensatedSum total;
    for (double v : partial) total += v;
    return total.value();
}

DecompositionReport assemble_report(const LambdaTable& table, const GoldbachConfig& config, const ZeroCatalog& zeros1,
                                    const ZeroCatalog& zeros2) {
    GoldbachConfig c = config;
    c.normalize();
    zeros1.require(c.q1);
    zeros2.require(c.q2);
    const double T1 = zeros1.height(), T2 = zeros2.height();
    if (T1 != T2) throw std::invalid_argument("zero data for the two moduli has different truncation heights");
    if (c.T > 0.0 && c.T != T1) throw std::invalid_argument("zero data height differs from the configured T");

    DecompositionReport r;
    r.X = c.X;
    r.q1 = c.q1;
    r.q2 = c.q2;
    r.a1 = c.a1;
    r.a2 = c.a2;
    r.T = T1;
    r.b_star1 = c.exponents.for_modulus(c.q1);
    r.b_star2 = c.exponents.for_modulus(c.q2);

    r.S_exact = summatory_S(table, c);

    const CharacterGroup g1(c.q1), g2(c.q2);
    const double phi1 = static_cast<double>(g1.phi()), phi2 = static_cast<double>(g2.phi());
    const SiegelDatum* s1 = c.siegel1 ? &*c.siegel1 : nullptr;
    const SiegelDatum* s2 = c.siegel2 ? &*c.siegel2 : nullptr;

    r.main_term = c.X * c.X / (2.0 * phi1 * phi2);
    const ZeroSumResult H1 = zero_sum_H(c.X, g1, c.a1, zeros1, s1);
    const ZeroSumResult H2 = zero_sum_H(c.X, g2, c.a2, zeros2, s2);
    r.h1_term = H1.value / phi2;
    r.h2_term = H2.value / phi1;
    r.h1_imag_residual = H1.imag_residual;
    r.h2_imag_residual = H2.imag_residual;
    r.zeros_used1 = H1.zero_count;
    r.zeros_used2 = H2.zero_count;
    r.z_term = zterm(c.X, ZTermSide{g1, c.a1, zeros1, s1}, ZTermSide{g2, c.a2, zeros2, s2});

    const double analytic = ((r.main_term + r.h1_term) + r.h2_term) + r.z_term;
    r.residual = r.S_exact - analytic;

    const double lx = std::log(c.X);
    r.bound = std::pow(c.X, r.b_star1 + r.b_star2) * lx * std::log(static_cast<double>(c.q1) * c.X) *
              std::log(static_cast<double>(c.q2) * c.X);
    r.bound_ratio = r.residual / r.bound;

    double beta_max = 0.0;
    if (s1) beta_max = std::max(beta_max, s1->beta);
    if (s2) beta_max = std::max(beta_max, s2->beta);
    if (beta_max > 0.0)
        r.z_tail_estimate = r.T > 0.0 ? std::pow(c.X, beta_max + 0.5) / r.T : std::numeric_limits<double>::infinity();
    if (s1) r.siegel1 = s1->describe();
    if (s2) r.siegel2 = s2->describe();
    r.zero_provenance = "q1: " + zeros1.provenance() + "; q2: " + zeros2.provenance();
    return r;
}

GallagherResult gallagher_check(const LambdaTable& table, double x, std::uint64_t q) {
    if (!(x >= 2.0)) throw std::invalid_argument("gallagher_check: x must be at least 2");
    if (q == 0) throw std::invalid_argument("gallagher_check: modulus must be positive");
    const std::uint64_t lo = static_cast<std::uint64_t>(std::ceil(x));
    const std::uint64_t hi = floor_u64(2.0 * x);
    require_limit(table, hi, "gallagher_check");

    // Exact Lambda mass per residue class on [x, 2x].
    std::vector<Fixed> cls(q, 0);
    for (const PrimePower& pp : table.prime_powers_upto(hi))
        if (pp.n >= lo) cls[pp.n % q] += to_fixed(pp.lambda);

    const CharacterGroup g(q);
    CompensatedSum lhs;
    for (const DirichletCharacter& chi : g.characters()) {
        ComplexCompensatedSum s;
        for (std::uint64_t r = 0; r < q; ++r)
            if (cls[r] != 0) s += chi.value(static_cast<std::int64_t>(r)) * from_fixed(cls[r]);
        if (chi.is_principal())
            lhs += std::abs(x - s.value().real());
        else
            lhs += std::abs(s.value());
    }
    GallagherResult out;
    out.x = x;
    out.q = q;
    out.lhs = lhs.value();
    out.ratio = out.lhs / x;
    out.pass = out.lhs <= x / 2.0;
    return out;
}

OmegaConstruction omega_construction(const LambdaTable& table, double x, double y, std::uint64_t q1,
                                     std::uint64_t q2, std::uint64_t a1, std::uint64_t a2,
                                     std::optional<std::uint64_t> excluded_prime) {
    check_residue(q1, a1);
    check_residue(q2, a2);
    a1 %= q1;
    a2 %= q2;
    if (!(x >= 1.0)) throw std::invalid_argument("omega_construction: x must be at least 1");
    if (!(y >= 0.0) || y > 1e4) throw std::invalid_argument("omega_construction: y out of range");
    const std::uint64_t top = floor_u64(2.0 * x);
    require_limit(table, top, "omega_construction");

    constexpr std::uint64_t kMaxResidues = std::uint64_t{1} << 24;
    std::uint64_t Q = 1;
    for (std::uint64_t p = 2; static_cast<double>(p) <= y; ++p) {
        if (factorize(p).size() != 1 || factorize(p)[0].e != 1) continue;
        if ((q1 * q2) % p == 0 || (excluded_prime && *excluded_prime == p)) continue;
        if (Q > kMaxResidues / p) throw std::overflow_error("omega_construction: Q construction overflow");
        Q *= p;
    }
    const std::uint64_t m1 = q1 * Q, m2 = q2 * Q;
    if (m1 > kMaxResidues || m2 > kMaxResidues)
        throw std::overflow_error("omega_construction: Q construction overflow");

    std::vector<Fixed> psi1(m1, 0), psi2(m2, 0);
    for (const PrimePower& pp : table.prime_powers_upto(top)) {
        psi1[pp.n % m1] += to_fixed(pp.lambda);
        psi2[pp.n % m2] += to_fixed(pp.lambda);
    }

    CompensatedSum lhs;
    for (std::uint64_t b = 1; b <= Q; ++b) {
        if (gcd(b, Q) != 1) continue;
        const std::uint64_t A = crt_combine(a1, q1, b % Q, Q);
        const std::uint64_t B = crt_combine(a2, q2, (Q - b % Q) % Q, Q);
        lhs += from_fixed(psi1[A]) * from_fixed(psi2[B]);
    }

    OmegaConstruction out;
    out.x = x;
    out.y = y;
    out.Q = Q;
    out.excluded_prime = excluded_prime;
    out.lhs = lhs.value();
    out.rhs = x * x /
              (4.0 * static_cast<double>(euler_phi(q1)) * static_cast<double>(euler_phi(q2)) *
               static_cast<double>(euler_phi(Q)));
    out.margin = out.lhs / out.rhs;
    out.pass = out.lhs >= out.rhs;
    return out;
}

std::vector<OmegaScanRow> omega_scan(const LambdaTable& table, std::uint64_t N, std::uint64_t q1, std::uint64_t q2,
                                     std::uint64_t a1, std::uint64_t a2) {
    if (N < 2) throw std::invalid_argument("omega_scan: N must be at least 2");
    require_limit(table, N, "omega_scan");
    const std::vector<double> G = goldbach_G_table(table, N, q1, q2, a1, a2);
    const int rows = std::bit_width(N / 2);  // floor(log2(N/2)) + 1

    std::vector<OmegaScanRow> out;
    double best = 0.0;
    std::uint64_t arg = 0;
    std::uint64_t n = 16;
    for (int k = 0; k < rows; ++k) {
        const std::uint64_t x = std::uint64_t{2} << k;
        for (; n <= x; ++n) {
            const double dn = static_cast<double>(n);
            const double r = G[n] / (dn * std::log(std::log(dn)));
            if (r > best) {
                best = r;
                arg = n;
            }
        }
        out.push_back({x, best, arg, arg ? G[arg] : 0.0});
    }
    return out;
}

} // namespace gbap
