#pragma once

#include "gbap/characters.hpp"
#include "gbap/special.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gbap {

struct Zero {
    double beta;
    double gamma;

    cplx rho() const { return {beta, gamma}; }
    friend bool operator==(const Zero&, const Zero&) = default;
};

// Nontrivial zeros of L(s, chi) with 0 < gamma <= height, ascending. Zeros
// below the real axis are not stored: for real chi they mirror these, for
// complex chi they are the conjugates of the set stored for conj(chi).
struct ZeroSet {
    std::uint64_t modulus = 1;
    std::uint64_t label = 1;
    std::vector<Zero> zeros;
    double height = 0.0;
    bool grh = true;
    std::string source = "computed";

    friend bool operator==(const ZeroSet&, const ZeroSet&) = default;
};

// (T / pi) log(q T / (2 pi e)): smooth count of zeros with |gamma| <= T.
double smooth_zero_count(std::uint64_t q, double height);
// Allowed deviation from the smooth count: 0.05 T log(q (T + 2)) + 10.
double zero_count_window(std::uint64_t q, double height);

class ZeroCountError : public std::runtime_error {
public:
    ZeroCountError(const std::string& what, double lo, double hi) : std::runtime_error(what), lo_(lo), hi_(hi) {}

    // Interval with the largest density-normalised gap between zeros.
    double gap_lo() const { return lo_; }
    double gap_hi() const { return hi_; }

private:
    double lo_;
    double hi_;
};

struct ZeroSearchOptions {
    double tolerance = 1e-9;   // bracket width on gamma
    double max_step = 0.5;     // coarse-scan step cap
    bool validate_count = true;
};

// Sign changes of the rotated completed L-function on the critical line
// for 0 < t <= height, refined by bisection. Local minima of |Z| that do not
// change sign are searched for a hidden pair. Requires chi primitive.
ZeroSet find_zeros(const DirichletCharacter& chi, double height, const ZeroSearchOptions& options = {});

// Throws std::runtime_error on any ZeroSet invariant violation, and
// ZeroCountError when check_count is set and the (both-sign) count falls
// outside the smooth-count window.
void validate_zero_set(const ZeroSet& set, bool check_count = true);

// Line format: header "ZSET1 q=<q> conrey=<label> T=<float> grh=<0|1>" then
// "<beta> <gamma>" per zero, gamma > 0 ascending.
void write_zeros(const ZeroSet& set, std::ostream& out);
void save_zeros(const ZeroSet& set, const std::filesystem::path& path);
ZeroSet load_zeros(const std::filesystem::path& path, std::optional<std::uint64_t> expected_modulus = std::nullopt,
                   std::optional<std::uint64_t> expected_label = std::nullopt);

// Zero sets keyed by primitive character (conductor, Conrey label). Any
// character mod q is served through its primitive inducer, which has the
// same nontrivial zeros. An empty catalog stands for height 0: every
// character has no stored zeros.
class ZeroCatalog {
public:
    using Key = std::pair<std::uint64_t, std::uint64_t>;

    void insert(ZeroSet set);
    const ZeroSet* find(std::uint64_t q, std::uint64_t label) const;
    const std::map<Key, ZeroSet>& sets() const { return sets_; }
    bool empty() const { return sets_.empty(); }

    // Stored zeros (gamma > 0) for chi's primitive inducer.
    std::span<const Zero> upper_zeros(const DirichletCharacter& chi) const;
    // Every stored nontrivial zero of L(s, chi), both signs of gamma, sorted.
    std::vector<cplx> zeros_of(const DirichletCharacter& chi) const;

    // True when every character mod q (and its conjugate) has a set, or the
    // catalog is empty.
    bool covers(std::uint64_t q) const;
    void require(std::uint64_t q) const;

    // Common truncation height; throws when the sets disagree.
    double height() const;

    ZeroCatalog truncated(double height) const;
    // Zeros with lo < gamma <= hi (height hi).
    ZeroCatalog slice(double lo, double hi) const;

    std::string provenance() const;

    // Primitive keys needed to cover the given moduli.
    static std::vector<Key> required_keys(std::span<const std::uint64_t> moduli);

    static ZeroCatalog compute(std::span<const std::uint64_t> moduli, double height,
                               const ZeroSearchOptions& options = {});

    // Computes the sets missing for the moduli at this catalog's height.
    void complete(std::span<const std::uint64_t> moduli, double height, const ZeroSearchOptions& options = {});

private:
    const ZeroSet& at(std::uint64_t q, std::uint64_t label) const;

    std::map<Key, ZeroSet> sets_;
};

} // namespace gbap
