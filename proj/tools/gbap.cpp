// gbap: command-line driver for the Goldbach-in-progressions toolkit.
#include "gbap/arith.hpp"
#include "gbap/characters.hpp"
#include "gbap/goldbach.hpp"
#include "gbap/moments.hpp"
#include "gbap/parallel.hpp"
#include "gbap/report_io.hpp"
#include "gbap/zero_sums.hpp"
#include "gbap/zeros.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace gbap;

namespace {

constexpr int kConfigError = 2;
constexpr int kValidationError = 3;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::uint64_t q = 1, q1 = 1, q2 = 1;
    std::optional<std::uint64_t> a, a1, a2;
    std::optional<std::uint64_t> label;
    std::optional<double> X;
    std::string grid;
    double T = 0.0;
    std::vector<std::string> zeros_files;
    std::vector<std::string> b_star;
    std::vector<std::string> siegel;
    std::string out;
    std::string format = "csv";
    unsigned threads = 0;
    std::uint64_t seed = 0;
    bool all_residues = false;
    // moments
    std::string kind = "H";
    std::optional<double> h;
    std::optional<double> theta;
    // sums
    double beta = 0.75, beta1 = 0.6, beta2 = 0.9;
    // omega
    double y = 7.0;
    std::optional<std::uint64_t> N;
    std::optional<std::uint64_t> exclude_prime;
    std::vector<std::uint64_t> moduli;
};

std::vector<double> x_values(const RunConfig& c) {
    if (!c.grid.empty()) {
        std::vector<std::string> parts;
        std::stringstream ss(c.grid);
        for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
        if (parts.size() != 3) throw ConfigError("--grid expects start:factor:count");
        double start, factor;
        long count;
        try {
            start = std::stod(parts[0]);
            factor = std::stod(parts[1]);
            count = std::stol(parts[2]);
        } catch (const std::exception&) {
            throw ConfigError("--grid expects start:factor:count");
        }
        if (count < 1) throw ConfigError("--grid count must be at least 1");
        if (!(factor > 1.0)) throw ConfigError("--grid factor must exceed 1");
        if (!(start > 0.0)) throw ConfigError("--grid start must be positive");
        std::vector<double> xs;
        double x = start;
        for (long i = 0; i < count; ++i, x *= factor) xs.push_back(std::round(x * 1e6) / 1e6);
        return xs;
    }
    if (c.X) return {*c.X};
    throw ConfigError("one of --X or --grid is required");
}

ExponentConfig exponents(const RunConfig& c) {
    ExponentConfig e;
    for (const std::string& s : c.b_star) {
        // V or q:V
        const auto colon = s.find(':');
        try {
            if (colon == std::string::npos)
                e.set_default(std::stod(s));
            else
                e.set(std::stoull(s.substr(0, colon)), std::stod(s.substr(colon + 1)));
        } catch (const std::invalid_argument& err) {
            throw ConfigError("bad --b-star value '" + s + "'");
        }
    }
    return e;
}

std::vector<SiegelDatum> siegel_data(const RunConfig& c, std::uint64_t default_modulus) {
    std::vector<SiegelDatum> out;
    for (const std::string& s : c.siegel) {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
        if (parts.size() < 2 || parts.size() > 3) throw ConfigError("--siegel expects beta:label[:modulus]");
        SiegelDatum d;
        try {
            d.beta = std::stod(parts[0]);
            d.label = std::stoull(parts[1]);
            d.modulus = parts.size() == 3 ? std::stoull(parts[2]) : default_modulus;
        } catch (const std::exception&) {
            throw ConfigError("--siegel expects beta:label[:modulus]");
        }
        d.validate();
        out.push_back(d);
    }
    return out;
}

const SiegelDatum* siegel_for(const std::vector<SiegelDatum>& data, std::uint64_t q) {
    for (const SiegelDatum& d : data)
        if (d.modulus == q) return &d;
    return nullptr;
}

std::vector<std::uint64_t> unit_residues(std::uint64_t q) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t a = 0; a < q; ++a)
        if (gcd(a, q) == 1) out.push_back(a);
    if (q == 1) out = {0};
    return out;
}

// Loads zero files, then computes whatever the moduli still need at height T.
ZeroCatalog build_catalog(const RunConfig& c, const std::vector<std::uint64_t>& moduli) {
    ZeroCatalog cat;
    for (const std::string& path : c.zeros_files) {
        if (!std::filesystem::exists(path)) throw ConfigError("zero file not found: " + path);
        cat.insert(load_zeros(path));
    }
    double T = c.T;
    if (!cat.empty()) {
        const double h = cat.height();
        if (T == 0.0) T = h;
        if (T > h) throw ConfigError("--T exceeds the height of the supplied zero files");
        if (T < h) cat = cat.truncated(T);
    }
    if (T > 0.0) std::cerr << "zeros: completing catalog to T=" << T << '\n';
    cat.complete(moduli, T);
    return cat;
}

struct Output {
    std::ofstream file;
    std::ostream* stream = &std::cout;

    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file.open(path);
            if (!file) throw ConfigError("cannot open output file " + path);
            stream = &file;
        }
    }
};

void emit(const RunConfig& c, const ResultTable& table, Provenance prov) {
    std::ostringstream extra;
    extra << "seed=" << c.seed;
    if (!prov.extra.empty()) extra << ' ' << prov.extra;
    prov.extra = extra.str();
    Output out(c.out);
    if (c.format == "json")
        write_json(*out.stream, table, prov);
    else
        write_csv(*out.stream, table, prov);
}

std::string join_b_star(const RunConfig& c) {
    if (c.b_star.empty()) return "0.5";
    std::string s;
    for (const auto& b : c.b_star) s += (s.empty() ? "" : ";") + b;
    return s;
}

LambdaTable sieve_for(double top) {
    const auto n = static_cast<std::uint64_t>(std::max(4.0, std::floor(top)));
    return build_lambda_table(n);
}

// ---- subcommands

int run_sieve(const RunConfig& c) {
    if (!c.N) throw ConfigError("sieve requires --N");
    const LambdaTable t = build_lambda_table(*c.N);
    if (!c.out.empty() && c.format == "bin") {
        t.save(c.out);
        return 0;
    }
    ResultTable r;
    r.columns = {"n", "lambda"};
    for (const PrimePower& pp : t.prime_powers()) r.add({pp.n, pp.lambda});
    emit(c, r, {});
    return 0;
}

int run_chars(const RunConfig& c) {
    const CharacterGroup g(c.q);
    Output out(c.out);
    g.write_csv(*out.stream);
    return 0;
}

int run_zeros(const RunConfig& c) {
    if (!c.zeros_files.empty()) {
        // validate mode
        ResultTable r;
        r.columns = {"file", "q", "label", "T", "count", "smooth_count"};
        for (const std::string& path : c.zeros_files) {
            const ZeroSet s = load_zeros(path);
            r.add({path, s.modulus, s.label, s.height, s.zeros.size(), smooth_zero_count(s.modulus, s.height)});
        }
        emit(c, r, {});
        return 0;
    }
    if (!(c.T > 0.0)) throw ConfigError("zeros requires --T > 0");
    std::vector<DirichletCharacter> targets;
    if (c.label) {
        targets.push_back(make_character(c.q, *c.label));
        if (!targets.back().is_primitive()) throw ConfigError("zeros: character must be primitive");
    } else {
        const CharacterGroup g(c.q);
        for (const DirichletCharacter& chi : g.characters())
            if (chi.is_primitive()) targets.push_back(chi);
    }
    if (targets.empty()) throw ConfigError("zeros: no primitive characters mod q");

    if (targets.size() == 1) {
        const ZeroSet s = find_zeros(targets.front(), c.T);
        if (c.out.empty())
            write_zeros(s, std::cout);
        else
            save_zeros(s, c.out);
        return 0;
    }
    // several characters: one file per label in the --out directory
    const std::filesystem::path dir = c.out.empty() ? std::filesystem::path(".") : std::filesystem::path(c.out);
    std::filesystem::create_directories(dir);
    for (const DirichletCharacter& chi : targets) {
        const ZeroSet s = find_zeros(chi, c.T);
        const auto path = dir / ("q" + std::to_string(chi.modulus()) + "_" + std::to_string(chi.label()) + ".zset");
        save_zeros(s, path);
        std::cout << path.string() << ' ' << s.zeros.size() << '\n';
    }
    return 0;
}

int run_verify(const RunConfig& c) {
    const std::vector<double> xs = x_values(c);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    if (c.all_residues) {
        for (auto a1 : unit_residues(c.q1))
            for (auto a2 : unit_residues(c.q2)) pairs.emplace_back(a1, a2);
    } else {
        pairs.emplace_back(c.a1.value_or(c.q1 == 1 ? 0 : 1), c.a2.value_or(c.q2 == 1 ? 0 : 1));
    }
    const auto siegels = siegel_data(c, c.q1);
    const std::vector<std::uint64_t> moduli = {c.q1, c.q2};
    const ZeroCatalog cat = build_catalog(c, moduli);
    const LambdaTable table = sieve_for(*std::max_element(xs.begin(), xs.end()));

    std::vector<DecompositionReport> reports;
    for (double X : xs)
        for (auto [a1, a2] : pairs) {
            GoldbachConfig g;
            g.X = X;
            g.q1 = c.q1;
            g.q2 = c.q2;
            g.a1 = a1;
            g.a2 = a2;
            g.T = cat.height();
            g.exponents = exponents(c);
            if (auto s = siegel_for(siegels, c.q1)) g.siegel1 = *s;
            if (auto s = siegel_for(siegels, c.q2)) g.siegel2 = *s;
            reports.push_back(assemble_report(table, g, cat, cat));
        }

    Provenance prov;
    prov.T = cat.height();
    prov.b_star = join_b_star(c);
    prov.zeros = c.zeros_files.empty() ? "computed" : "file";
    if (c.format == "json") {
        nlohmann::json doc;
        doc["provenance"] = {{"version", GBAP_VERSION}, {"T", prov.T}, {"b_star", prov.b_star},
                             {"zeros", prov.zeros}, {"seed", c.seed}};
        doc["reports"] = nlohmann::json::array();
        for (const auto& r : reports) doc["reports"].push_back(to_json(r));
        Output out(c.out);
        *out.stream << doc.dump(2) << '\n';
        return 0;
    }
    emit(c, decomposition_table(reports), prov);
    return 0;
}

int run_moments(const RunConfig& c) {
    const std::vector<double> xs = x_values(c);
    if (c.kind != "H" && c.kind != "K") throw ConfigError("--kind must be H or K");
    const std::vector<std::uint64_t> residues = c.a ? std::vector<std::uint64_t>{*c.a} : unit_residues(c.q);
    const auto siegels = siegel_data(c, c.q);
    const SiegelDatum* s = siegel_for(siegels, c.q);
    const double b = exponents(c).for_modulus(c.q);

    double top = *std::max_element(xs.begin(), xs.end());
    if (c.kind == "K") top *= 2.0;
    const LambdaTable table = sieve_for(top);

    std::vector<MomentResult> rows;
    for (double x : xs)
        for (std::uint64_t a : residues) {
            if (c.kind == "H") {
                rows.push_back(second_moment_H(table, x, c.q, a, s, b));
            } else {
                double h = c.h.value_or(1.0);
                if (c.theta) h = std::max(1.0, std::pow(x, *c.theta));
                rows.push_back(second_moment_K(table, x, h, c.q, a, s, b));
            }
        }
    Provenance prov;
    prov.b_star = join_b_star(c);
    prov.extra = "kind=" + c.kind;
    emit(c, moment_table(rows), prov);
    return 0;
}

int run_sums(const RunConfig& c) {
    const std::vector<double> xs = x_values(c);
    const std::vector<std::uint64_t> residues = c.a ? std::vector<std::uint64_t>{*c.a} : unit_residues(c.q);
    const std::vector<std::uint64_t> moduli = {c.q};
    const ZeroCatalog cat = build_catalog(c, moduli);
    const LambdaTable table = sieve_for(*std::max_element(xs.begin(), xs.end()));

    ResultTable r;
    r.columns = {"identity", "X", "q", "a", "beta", "lhs", "rhs", "residual", "ratio"};
    for (double X : xs) {
        for (std::uint64_t a : residues) {
            const IdentityCheck s = sum_psi_progression(table, X, c.q, a, cat);
            r.add({"sum_psi", X, c.q, a, 1.0, s.lhs, s.rhs, s.residual, s.ratio});
            const IdentityCheck w = weighted_beta_sum(table, X, c.q, a, c.beta, cat);
            r.add({"weighted_beta", X, c.q, a, c.beta, w.lhs, w.rhs, w.residual, w.ratio});
        }
        const PowerSumReport p = power_sum_identities(X, c.beta, c.beta1, c.beta2);
        r.add({"power_sum_1", X, 1, 0, c.beta, p.lhs1, p.main1, p.lhs1 - p.main1, p.ratio1});
        r.add({"power_sum_2", X, 1, 0, c.beta1 + c.beta2, p.lhs2, p.main2, p.lhs2 - p.main2, p.ratio2});
    }
    Provenance prov;
    prov.T = cat.height();
    prov.zeros = c.zeros_files.empty() ? "computed" : "file";
    std::ostringstream extra;
    extra << "beta=" << format_real(c.beta) << " beta1=" << format_real(c.beta1) << " beta2=" << format_real(c.beta2);
    prov.extra = extra.str();
    emit(c, r, prov);
    return 0;
}

int run_omega(const RunConfig& c) {
    const std::uint64_t a1 = c.a1.value_or(c.q1 == 1 ? 0 : 1), a2 = c.a2.value_or(c.q2 == 1 ? 0 : 1);
    if (c.N) {
        const LambdaTable table = build_lambda_table(std::max<std::uint64_t>(*c.N, 4));
        ResultTable r;
        r.columns = {"x", "ratio", "argmax", "G"};
        for (const OmegaScanRow& row : omega_scan(table, *c.N, c.q1, c.q2, a1, a2))
            r.add({row.x, row.ratio, row.argmax, row.G});
        emit(c, r, {});
        return 0;
    }
    const std::vector<double> xs = x_values(c);
    const LambdaTable table = sieve_for(2.0 * *std::max_element(xs.begin(), xs.end()));
    ResultTable r;
    r.columns = {"x", "y", "Q", "lhs", "rhs", "margin", "pass"};
    for (double x : xs) {
        const OmegaConstruction o = omega_construction(table, x, c.y, c.q1, c.q2, a1, a2, c.exclude_prime);
        r.add({x, c.y, o.Q, o.lhs, o.rhs, o.margin, o.pass});
    }
    emit(c, r, {});
    return 0;
}

int run_gallagher(const RunConfig& c) {
    const std::vector<double> xs = x_values(c);
    const std::vector<std::uint64_t> moduli = c.moduli.empty() ? std::vector<std::uint64_t>{c.q} : c.moduli;
    const LambdaTable table = sieve_for(2.0 * *std::max_element(xs.begin(), xs.end()));
    ResultTable r;
    r.columns = {"x", "q", "lhs", "ratio", "pass"};
    for (double x : xs)
        for (std::uint64_t q : moduli) {
            const GallagherResult g = gallagher_check(table, x, q);
            r.add({x, q, g.lhs, g.ratio, g.pass});
        }
    emit(c, r, {});
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Goldbach sums in arithmetic progressions: exact sums, zeros and explicit-formula checks"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key=value configuration file; flags override it");
    app.get_config_formatter_base()->arrayDelimiter(',');

    RunConfig c;
    app.add_option("--threads", c.threads, "worker threads (0 = hardware)");
    app.add_option("--seed", c.seed, "seed recorded in the provenance line");
    app.add_option("--out", c.out, "output path (default stdout)");
    app.add_option("--format", c.format, "csv|json; bin writes the sieve table")->check(CLI::IsMember({"csv", "json", "bin"}));

    auto common_x = [&](CLI::App* s) {
        s->add_option("--X", c.X, "single X value");
        s->add_option("--grid", c.grid, "start:factor:count");
    };
    auto common_zeros = [&](CLI::App* s) {
        s->add_option("--T", c.T, "zero truncation height");
        s->add_option("--zeros-file", c.zeros_files, "ZSET1 zero file (repeatable)");
    };

    auto* sieve = app.add_subcommand("sieve", "build the von Mangoldt table");
    sieve->add_option("--N", c.N, "sieve limit")->required();

    auto* chars = app.add_subcommand("chars", "character table");
    chars->add_option("--q", c.q, "modulus")->required();

    auto* zeros = app.add_subcommand("zeros", "compute, validate or save zeros");
    zeros->add_option("--q", c.q, "modulus");
    zeros->add_option("--label", c.label, "Conrey label (primitive)");
    common_zeros(zeros);

    auto* verify = app.add_subcommand("verify-theorem", "decomposition of S into main, zero and residual terms");
    verify->add_option("--q1", c.q1);
    verify->add_option("--q2", c.q2);
    verify->add_option("--a1", c.a1);
    verify->add_option("--a2", c.a2);
    verify->add_flag("--all-residues", c.all_residues, "every unit pair (a1, a2)");
    verify->add_option("--b-star", c.b_star, "V or q:V (repeatable)");
    verify->add_option("--siegel", c.siegel, "beta:label[:modulus] (repeatable)");
    common_x(verify);
    common_zeros(verify);

    auto* moments = app.add_subcommand("moments", "second moments H and K");
    moments->add_option("--q", c.q);
    moments->add_option("--a", c.a);
    moments->add_option("--kind", c.kind, "H or K");
    moments->add_option("--shift", c.h, "K: fixed window h");
    moments->add_option("--theta", c.theta, "K: h = x^theta");
    moments->add_option("--b-star", c.b_star, "V or q:V");
    moments->add_option("--siegel", c.siegel, "beta:label[:modulus]");
    common_x(moments);

    auto* sums = app.add_subcommand("sums", "psi-sum, weighted beta and power-sum identities");
    sums->add_option("--q", c.q);
    sums->add_option("--a", c.a);
    sums->add_option("--beta", c.beta);
    sums->add_option("--beta1", c.beta1);
    sums->add_option("--beta2", c.beta2);
    common_x(sums);
    common_zeros(sums);

    auto* omega = app.add_subcommand("omega", "residue-class construction and G(n) scan");
    omega->add_option("--q1", c.q1);
    omega->add_option("--q2", c.q2);
    omega->add_option("--a1", c.a1);
    omega->add_option("--a2", c.a2);
    omega->add_option("--y", c.y, "prime cutoff for Q");
    omega->add_option("--exclude-prime", c.exclude_prime);
    omega->add_option("--N", c.N, "scan limit (scan mode)");
    common_x(omega);

    auto* gallagher = app.add_subcommand("gallagher", "character-sum inequality on [x, 2x]");
    gallagher->add_option("--q", c.moduli, "modulus (repeatable)");
    common_x(gallagher);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    try {
        set_thread_count(c.threads);
        if (*sieve) return run_sieve(c);
        if (*chars) return run_chars(c);
        if (*zeros) return run_zeros(c);
        if (*verify) return run_verify(c);
        if (*moments) return run_moments(c);
        if (*sums) return run_sums(c);
        if (*omega) return run_omega(c);
        if (*gallagher) return run_gallagher(c);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "validation failure: " << e.what() << '\n';
        return kValidationError;
    }
    return kConfigError;
}
