#include "gbap/zeros.hpp"

#include "gbap/arith.hpp"
#include "gbap/lfunction.hpp"
#include "gbap/parallel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace gbap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kEvalBlock = 64;

double density_step(std::uint64_t q, double t, double max_step) {
    // half the mean zero spacing 2 pi / log(q t / 2 pi)
    const double l = std::log(static_cast<double>(q) * t / kTwoPi);
    if (!(l > 0.0)) return max_step;
    return std::min(max_step, std::numbers::pi / l);
}

std::vector<double> scan_grid(std::uint64_t q, double height, double max_step) {
    std::vector<double> grid;
    double t = 0.0;
    while (t < height) {
        grid.push_back(t);
        t += density_step(q, std::max(t, 1.0), max_step);
    }
    grid.push_back(height);
    return grid;
}

struct Bracket {
    double a, b;
    double za, zb;
};

double refine(HardyZ& z, Bracket br, double tol) {
    while (br.b - br.a > tol) {
        const double m = 0.5 * (br.a + br.b);
        if (m <= br.a || m >= br.b) break;
        const double zm = z(m);
        if (zm == 0.0) return m;
        if ((zm < 0) == (br.za < 0)) {
            br.a = m;
            br.za = zm;
        } else {
            br.b = m;
            br.zb = zm;
        }
    }
    const double g = br.a - br.za * (br.b - br.a) / (br.zb - br.za);
    return std::clamp(g, br.a, br.b);
}

// Golden-section search for a point where sign * Z < 0 in (a, b). Returns the
// point found, or nullopt when the minimum stays on the same side.
std::optional<std::pair<double, double>> hidden_pair(HardyZ& z, double sign, double a, double b) {
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = sign * z(c), fd = sign * z(d);
    for (int it = 0; it < 60 && b - a > 1e-10; ++it) {
        if (fc < 0) return std::pair{c, fc * sign};
        if (fd < 0) return std::pair{d, fd * sign};
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = sign * z(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = sign * z(d);
        }
    }
    if (fc < 0) return std::pair{c, fc * sign};
    if (fd < 0) return std::pair{d, fd * sign};
    return std::nullopt;
}

std::pair<double, double> largest_gap(const ZeroSet& set) {
    double prev = 0.0, best = -1.0, lo = 0.0, hi = set.height;
    auto consider = [&](double a, double b) {
        const double dens = std::max(1.0, std::log(static_cast<double>(set.modulus) * b / kTwoPi)) / kTwoPi;
        const double score = (b - a) * dens;
        if (score > best) {
            best = score;
            lo = a;
            hi = b;
        }
    };
    for (const Zero& z : set.zeros) {
        consider(prev, z.gamma);
        prev = z.gamma;
    }
    consider(prev, set.height);
    return {lo, hi};
}

void check_count(const ZeroSet& set) {
    const double found = 2.0 * static_cast<double>(set.zeros.size());
    const double expected = smooth_zero_count(set.modulus, set.height);
    const double window = zero_count_window(set.modulus, set.height);
    if (std::abs(found - expected) > window) {
        const auto [lo, hi] = largest_gap(set);
        std::ostringstream msg;
        msg.precision(10);
        msg << "zero count check failed for q=" << set.modulus << " label=" << set.label << " T=" << set.height
            << ": found " << found << ", expected " << expected << " +- " << window << "; largest gap in [" << lo
            << ", " << hi << "]";
        throw ZeroCountError(msg.str(), lo, hi);
    }
}

template <class T>
bool parse_number(std::string_view s, T& out) {
    if (s.empty()) return false;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && p == s.data() + s.size();
}

bool parse_field(const std::string& token, std::string_view key, std::string_view& value) {
    if (token.size() <= key.size() + 1 || token.compare(0, key.size(), key) != 0 || token[key.size()] != '=')
        return false;
    value = std::string_view(token).substr(key.size() + 1);
    return true;
}

std::uint64_t conj_primitive_label(std::uint64_t f, std::uint64_t label) {
    return f == 1 ? 1 : mod_inverse(label, f);
}

} // namespace

double smooth_zero_count(std::uint64_t q, double height) {
    if (height <= 0.0) return 0.0;
    return height / std::numbers::pi * std::log(static_cast<double>(q) * height / (kTwoPi * std::numbers::e));
}

double zero_count_window(std::uint64_t q, double height) {
    return 0.05 * height * std::log(static_cast<double>(q) * (height + 2.0)) + 10.0;
}

ZeroSet find_zeros(const DirichletCharacter& chi, double height, const ZeroSearchOptions& options) {
    if (!chi.is_primitive()) throw std::invalid_argument("find_zeros: character must be primitive");
    if (!(height >= 0.0) || height > kImagCeiling) throw std::invalid_argument("find_zeros: height out of range");
    if (!(options.tolerance > 0.0) || !(options.max_step > 0.0))
        throw std::invalid_argument("find_zeros: invalid search options");

    ZeroSet out;
    out.modulus = chi.modulus();
    out.label = chi.label();
    out.height = height;
    out.grh = true;
    out.source = "computed";
    if (height == 0.0) return out;

    const std::uint64_t q = chi.modulus();
    const std::vector<double> grid = scan_grid(q, height, options.max_step);
    std::vector<double> values(grid.size());

    // Coarse scan over fixed blocks of grid points.
    const std::size_t blocks = (grid.size() + kEvalBlock - 1) / kEvalBlock;
    parallel_for(blocks, [&](std::size_t b) {
        HardyZ z(chi);
        const std::size_t end = std::min(grid.size(), (b + 1) * kEvalBlock);
        for (std::size_t i = b * kEvalBlock; i < end; ++i) values[i] = z(grid[i]);
    });

    std::vector<Bracket> brackets;
    std::vector<double> exact;
    std::vector<std::size_t> minima;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (values[i] == 0.0 && grid[i] > 0.0) exact.push_back(grid[i]);
        if (values[i] * values[i + 1] < 0.0) brackets.push_back({grid[i], grid[i + 1], values[i], values[i + 1]});
        if (i >= 1) {
            const double l = values[i - 1], m = values[i], r = values[i + 1];
            if (l * m > 0.0 && m * r > 0.0 && std::abs(m) < std::abs(l) && std::abs(m) < std::abs(r))
                minima.push_back(i);
        }
    }
    if (values.back() == 0.0) exact.push_back(grid.back());

    // Hidden pairs at same-sign local minima of |Z|.
    std::vector<std::vector<Bracket>> found(minima.size());
    parallel_for(minima.size(), [&](std::size_t k) {
        HardyZ z(chi);
        const std::size_t i = minima[k];
        const double sign = values[i] > 0 ? 1.0 : -1.0;
        if (auto hit = hidden_pair(z, sign, grid[i - 1], grid[i + 1])) {
            found[k].push_back({grid[i - 1], hit->first, values[i - 1], hit->second});
            found[k].push_back({hit->first, grid[i + 1], hit->second, values[i + 1]});
        }
    });
    for (auto& f : found) brackets.insert(brackets.end(), f.begin(), f.end());

    std::vector<double> gammas(brackets.size());
    const std::size_t rblocks = (brackets.size() + 15) / 16;
    parallel_for(rblocks, [&](std::size_t b) {
        HardyZ z(chi);
        const std::size_t end = std::min(brackets.size(), (b + 1) * 16);
        for (std::size_t i = b * 16; i < end; ++i) gammas[i] = refine(z, brackets[i], options.tolerance);
    });
    gammas.insert(gammas.end(), exact.begin(), exact.end());
    std::sort(gammas.begin(), gammas.end());
    gammas.erase(std::unique(gammas.begin(), gammas.end()), gammas.end());

    out.zeros.reserve(gammas.size());
    for (double g : gammas)
        if (g > 0.0 && g <= height) out.zeros.push_back({0.5, g});

    if (options.validate_count) check_count(out);
    return out;
}

void validate_zero_set(const ZeroSet& set, bool check) {
    if (set.modulus == 0) throw std::runtime_error("zero set: modulus must be positive");
    if (!(set.height >= 0.0) || !std::isfinite(set.height)) throw std::runtime_error("zero set: invalid height");
    double prev = 0.0;
    for (const Zero& z : set.zeros) {
        if (!(z.gamma > 0.0) || z.gamma > set.height)
            throw std::runtime_error("zero set: ordinate outside (0, T]");
        if (!(z.gamma > prev)) throw std::runtime_error("zero set: ordinates not strictly ascending");
        if (!(z.beta > 0.0 && z.beta < 1.0)) throw std::runtime_error("zero set: real part outside (0, 1)");
        if (set.grh && z.beta != 0.5) throw std::runtime_error("zero set: grh flag set but real part is not 1/2");
        prev = z.gamma;
    }
    if (check) check_count(set);
}

void write_zeros(const ZeroSet& set, std::ostream& out) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.17g", set.height);
    out << "ZSET1 q=" << set.modulus << " conrey=" << set.label << " T=" << buf << " grh=" << (set.grh ? 1 : 0)
        << '\n';
    for (const Zero& z : set.zeros) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", z.beta, z.gamma);
        out << buf;
    }
}

void save_zeros(const ZeroSet& set, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write zero file " + path.string());
    write_zeros(set, out);
    if (!out) throw std::runtime_error("error writing zero file " + path.string());
}

ZeroSet load_zeros(const std::filesystem::path& path, std::optional<std::uint64_t> expected_modulus,
                   std::optional<std::uint64_t> expected_label) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open zero file " + path.string());
    const std::string where = "zero file " + path.string();

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(where + ": missing header");
    std::istringstream head(line);
    std::vector<std::string> tok;
    for (std::string s; head >> s;) tok.push_back(s);
    std::string_view qv, lv, tv, gv;
    if (tok.size() != 5 || tok[0] != "ZSET1" || !parse_field(tok[1], "q", qv) || !parse_field(tok[2], "conrey", lv) ||
        !parse_field(tok[3], "T", tv) || !parse_field(tok[4], "grh", gv))
        throw std::runtime_error(where + ": malformed header");

    ZeroSet set;
    int grh = -1;
    if (!parse_number(qv, set.modulus) || set.modulus == 0 || !parse_number(lv, set.label) ||
        !parse_number(tv, set.height) || !parse_number(gv, grh) || (grh != 0 && grh != 1))
        throw std::runtime_error(where + ": malformed header");
    set.grh = grh == 1;
    set.source = path.string();

    if (expected_modulus && *expected_modulus != set.modulus)
        throw std::runtime_error(where + ": modulus does not match the requested character");
    if (expected_label && *expected_label != set.label)
        throw std::runtime_error(where + ": label does not match the requested character");
    if (gcd(set.label, set.modulus) != 1 && set.modulus != 1)
        throw std::runtime_error(where + ": label is not a unit mod q");

    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream row(line);
        std::string b, g, extra;
        Zero z{};
        if (!(row >> b >> g) || (row >> extra) || !parse_number(std::string_view(b), z.beta) ||
            !parse_number(std::string_view(g), z.gamma))
            throw std::runtime_error(where + ": malformed line " + std::to_string(lineno));
        set.zeros.push_back(z);
    }
    try {
        validate_zero_set(set, true);
    } catch (const ZeroCountError&) {
        throw;
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(where + ": " + e.what());
    }
    return set;
}

// ---- catalog

void ZeroCatalog::insert(ZeroSet set) {
    const DirichletCharacter chi = make_character(set.modulus, set.label);
    if (!chi.is_primitive()) throw std::invalid_argument("zero catalog: character must be primitive");
    set.label = chi.label();
    validate_zero_set(set, false);
    sets_[{set.modulus, set.label}] = std::move(set);
}

const ZeroSet* ZeroCatalog::find(std::uint64_t q, std::uint64_t label) const {
    auto it = sets_.find({q, label});
    return it == sets_.end() ? nullptr : &it->second;
}

const ZeroSet& ZeroCatalog::at(std::uint64_t q, std::uint64_t label) const {
    if (const ZeroSet* s = find(q, label)) return *s;
    static const ZeroSet none = [] {
        ZeroSet z;
        z.source = "none";
        return z;
    }();
    if (sets_.empty()) return none;
    throw std::runtime_error("zero catalog: no zeros for primitive character q=" + std::to_string(q) +
                             " label=" + std::to_string(label));
}

std::span<const Zero> ZeroCatalog::upper_zeros(const DirichletCharacter& chi) const {
    return at(chi.conductor(), chi.induced_from()).zeros;
}

std::vector<cplx> ZeroCatalog::zeros_of(const DirichletCharacter& chi) const {
    const std::uint64_t f = chi.conductor();
    const auto& up = at(f, chi.induced_from()).zeros;
    const auto& down = at(f, conj_primitive_label(f, chi.induced_from())).zeros;
    std::vector<cplx> out;
    out.reserve(up.size() + down.size());
    for (auto it = down.rbegin(); it != down.rend(); ++it) out.emplace_back(it->beta, -it->gamma);
    for (const Zero& z : up) out.emplace_back(z.beta, z.gamma);
    return out;
}

bool ZeroCatalog::covers(std::uint64_t q) const {
    if (sets_.empty()) return true;
    const std::uint64_t moduli[] = {q};
    for (const Key& k : required_keys(moduli))
        if (!find(k.first, k.second)) return false;
    return true;
}

void ZeroCatalog::require(std::uint64_t q) const {
    const std::uint64_t moduli[] = {q};
    for (const Key& k : required_keys(moduli))
        at(k.first, k.second);
}

double ZeroCatalog::height() const {
    if (sets_.empty()) return 0.0;
    const double h = sets_.begin()->second.height;
    for (const auto& [k, s] : sets_)
        if (s.height != h) throw std::runtime_error("zero catalog: zero sets have different truncation heights");
    return h;
}

ZeroCatalog ZeroCatalog::truncated(double h) const {
    return slice(0.0, h);
}

ZeroCatalog ZeroCatalog::slice(double lo, double hi) const {
    if (!(lo >= 0.0) || !(hi >= lo)) throw std::invalid_argument("zero catalog: invalid slice");
    ZeroCatalog out;
    for (const auto& [k, s] : sets_) {
        if (hi > s.height) throw std::invalid_argument("zero catalog: slice above the stored height");
        ZeroSet t = s;
        t.height = hi;
        t.zeros.clear();
        for (const Zero& z : s.zeros)
            if (z.gamma > lo && z.gamma <= hi) t.zeros.push_back(z);
        out.sets_.emplace(k, std::move(t));
    }
    return out;
}

std::string ZeroCatalog::provenance() const {
    std::size_t computed = 0, loaded = 0, zeros = 0;
    for (const auto& [k, s] : sets_) {
        (s.source == "computed" ? computed : loaded) += 1;
        zeros += s.zeros.size();
    }
    std::ostringstream o;
    o.precision(17);
    o << "sets=" << sets_.size() << " computed=" << computed << " loaded=" << loaded << " zeros=" << zeros;
    if (!sets_.empty()) {
        try {
            o << " T=" << height();
        } catch (const std::runtime_error&) {
            o << " T=mixed";
        }
    }
    return o.str();
}

std::vector<ZeroCatalog::Key> ZeroCatalog::required_keys(std::span<const std::uint64_t> moduli) {
    std::vector<Key> keys;
    for (std::uint64_t q : moduli) {
        const CharacterGroup g(q);
        for (const DirichletCharacter& chi : g.characters()) {
            const std::uint64_t f = chi.conductor();
            keys.emplace_back(f, chi.induced_from());
            keys.emplace_back(f, conj_primitive_label(f, chi.induced_from()));
        }
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return keys;
}

ZeroCatalog ZeroCatalog::compute(std::span<const std::uint64_t> moduli, double height,
                                 const ZeroSearchOptions& options) {
    ZeroCatalog out;
    out.complete(moduli, height, options);
    return out;
}

void ZeroCatalog::complete(std::span<const std::uint64_t> moduli, double height, const ZeroSearchOptions& options) {
    for (const Key& k : required_keys(moduli)) {
        if (const ZeroSet* s = find(k.first, k.second)) {
            if (s->height != height)
                throw std::runtime_error("zero catalog: existing zero set has a different truncation height");
            continue;
        }
        sets_[k] = find_zeros(make_character(k.first, k.second), height, options);
    }
}

} // namespace gbap
