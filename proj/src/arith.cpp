#include "gbap/arith.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string>

namespace gbap {

namespace {

std::uint64_t g_ceiling = 100'000'000;

constexpr std::uint64_t kSegment = 1u << 18;
constexpr char kMagic[5] = {'L', 'T', 'B', 'L', '1'};

std::vector<std::uint64_t> small_primes(std::uint64_t limit) {
    std::vector<char> composite(limit + 1, 0);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    }
    return primes;
}

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

void write_u64_le(std::ostream& out, std::uint64_t v) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(buf), 8);
}

std::uint64_t read_u64_le(std::istream& in) {
    unsigned char buf[8];
    if (!in.read(reinterpret_cast<char*>(buf), 8)) throw std::runtime_error("lambda table: truncated file");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    return v;
}

} // namespace

void set_sieve_limit_ceiling(std::uint64_t ceiling) { g_ceiling = ceiling; }
std::uint64_t sieve_limit_ceiling() { return g_ceiling; }

LambdaTable build_lambda_table(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("lambda table: N must be >= 1");
    if (n > g_ceiling)
        throw std::invalid_argument("lambda table: N = " + std::to_string(n) + " exceeds memory ceiling " +
                                    std::to_string(g_ceiling));

    LambdaTable t;
    t.limit_ = n;
    t.values_.assign(n + 1, 0.0);

    const auto base = small_primes(isqrt(n));
    std::vector<char> composite(kSegment);

    // Primes, one segment at a time.
    for (std::uint64_t lo = 2; lo <= n; lo += kSegment) {
        std::uint64_t hi = std::min(n + 1, lo + kSegment);
        std::fill(composite.begin(), composite.end(), 0);
        for (std::uint64_t p : base) {
            if (p * p >= hi) break;
            std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
            for (std::uint64_t j = start; j < hi; j += p) composite[j - lo] = 1;
        }
        for (std::uint64_t i = lo; i < hi; ++i)
            if (!composite[i - lo]) t.values_[i] = std::log(static_cast<double>(i));
    }

    // Higher prime powers; only primes up to sqrt(N) have any.
    for (std::uint64_t p : base) {
        const double lp = t.values_[p];
        for (std::uint64_t pk = p * p; pk <= n; pk *= p) {
            t.values_[pk] = lp;
            if (pk > n / p) break;
        }
    }

    for (std::uint64_t i = 2; i <= n; ++i)
        if (t.values_[i] != 0.0) t.prime_powers_.push_back({i, t.values_[i]});
    return t;
}

LambdaTable LambdaTable::from_values(std::vector<double> values) {
    LambdaTable t;
    t.limit_ = values.size() - 1;
    t.values_ = std::move(values);
    for (std::uint64_t i = 1; i <= t.limit_; ++i)
        if (t.values_[i] != 0.0) t.prime_powers_.push_back({i, t.values_[i]});
    return t;
}

std::span<const PrimePower> LambdaTable::prime_powers_upto(std::uint64_t bound) const {
    auto it = std::upper_bound(prime_powers_.begin(), prime_powers_.end(), bound,
                               [](std::uint64_t b, const PrimePower& pp) { return b < pp.n; });
    return {prime_powers_.data(), static_cast<std::size_t>(it - prime_powers_.begin())};
}

void LambdaTable::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("lambda table: cannot open " + path.string());
    out.write(kMagic, sizeof kMagic);
    write_u64_le(out, limit_);
    for (std::uint64_t i = 1; i <= limit_; ++i) write_u64_le(out, std::bit_cast<std::uint64_t>(values_[i]));
    if (!out) throw std::runtime_error("lambda table: write failed for " + path.string());
}

LambdaTable LambdaTable::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("lambda table: cannot open " + path.string());
    char magic[5];
    if (!in.read(magic, 5) || std::memcmp(magic, kMagic, 5) != 0)
        throw std::runtime_error("lambda table: bad magic in " + path.string());
    std::uint64_t n = read_u64_le(in);
    if (n == 0 || n > g_ceiling) throw std::runtime_error("lambda table: bad N in " + path.string());
    std::vector<double> values(n + 1, 0.0);
    for (std::uint64_t i = 1; i <= n; ++i) values[i] = std::bit_cast<double>(read_u64_le(in));
    return from_values(std::move(values));
}

ProgressionPrefix::ProgressionPrefix(const LambdaTable& table, std::uint64_t q, std::uint64_t a) : q_(q), a_(a) {
    if (q == 0) throw std::invalid_argument("progression: modulus must be >= 1");
    if (a >= q) throw std::invalid_argument("progression: residue must lie in [0, q)");
    const std::uint64_t n = table.limit();
    cumulative_.assign(n + 1, 0);
    Fixed acc = 0;
    const auto values = table.values();
    for (std::uint64_t t = 1; t <= n; ++t) {
        if (t % q == a && values[t] != 0.0) acc += to_fixed(values[t]);
        cumulative_[t] = acc;
    }
}

Fixed ProgressionPrefix::fixed(std::int64_t t) const {
    if (t <= 0) return 0;
    if (static_cast<std::uint64_t>(t) >= cumulative_.size())
        throw std::out_of_range("progression: t = " + std::to_string(t) + " beyond sieve limit");
    return cumulative_[static_cast<std::size_t>(t)];
}

double ProgressionPrefix::operator()(std::int64_t t) const { return from_fixed(fixed(t)); }

double ProgressionPrefix::at(double t) const {
    if (t < 1.0) return 0.0;
    return (*this)(static_cast<std::int64_t>(std::floor(t)));
}

ProgressionPrefix progression_prefix(const LambdaTable& table, std::uint64_t q, std::uint64_t a) {
    return ProgressionPrefix(table, q, a);
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

std::vector<PrimeFactor> factorize(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be >= 1");
    std::vector<PrimeFactor> out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

std::uint64_t euler_phi(std::uint64_t q) {
    if (q == 0) throw std::invalid_argument("euler_phi: q must be >= 1");
    std::uint64_t phi = q;
    for (auto [p, e] : factorize(q)) phi = phi / p * (p - 1);
    return phi;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
    if (m == 1) return 0;
    std::int64_t r0 = static_cast<std::int64_t>(m), r1 = static_cast<std::int64_t>(a % m);
    std::int64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
        std::int64_t k = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - k * r1);
        std::tie(s0, s1) = std::make_pair(s1, s0 - k * s1);
    }
    if (r0 != 1) throw std::invalid_argument("mod_inverse: argument not invertible");
    return reduce_residue(s0, m);
}

std::uint64_t crt_combine(std::uint64_t a1, std::uint64_t q1, std::uint64_t a2, std::uint64_t q2) {
    if (q1 == 0 || q2 == 0) throw std::invalid_argument("crt: moduli must be >= 1");
    if (gcd(q1, q2) != 1) throw std::invalid_argument("crt: moduli are not coprime");
    // A = a1*m1*q2 + a2*m2*q1 with m1*q2 + m2*q1 = 1.
    const unsigned __int128 m = static_cast<unsigned __int128>(q1) * q2;
    const unsigned __int128 m1 = mod_inverse(q2 % q1, q1);
    const unsigned __int128 m2 = mod_inverse(q1 % q2, q2);
    unsigned __int128 a = (a1 % q1) * m1 % q1 * q2 + (a2 % q2) * m2 % q2 * q1;
    return static_cast<std::uint64_t>(a % m);
}

void check_residue(std::uint64_t q, std::uint64_t a) {
    if (q == 0) throw std::invalid_argument("modulus must be positive");
    if (gcd(a % q, q) != 1)
        throw std::invalid_argument("residue " + std::to_string(a) + " is not a unit mod " + std::to_string(q));
}

} // namespace gbap
