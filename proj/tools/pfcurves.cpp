// pfcurves: parameter search and heuristic estimates for pairing-friendly curves.
//
//   pfcurves scan     --k 12 --D 3 --rho0 1.1 --min 1e6 --max 1e8
//   pfcurves count    --k 3 --D 1 --rho0 1.7 --min 1000000 --max 85698768
//   pfcurves estimate --k 12 --D 3 --rho0 1.5 --min 1e8 --max 1e10
//   pfcurves family   --name bn --rmin 1e6 --rmax 1e8 --rho0 1.1
//   pfcurves bh
//
// Exit status: 0 success, 2 invalid configuration, 3 verification failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pfc/batemanhorn.hpp"
#include "pfc/driver.hpp"
#include "pfc/errors.hpp"
#include "pfc/estimator.hpp"
#include "pfc/families.hpp"
#include "pfc/output.hpp"
#include "pfc/scan.hpp"

using namespace pfc;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitVerify = 3;

// Exact non-negative integer from "85698768", "1e8" or "2.5e6".
u64 parse_count(const std::string& flag, const std::string& text) {
    auto bad = [&]() -> u64 { throw ConfigError(flag + ": expected a non-negative integer, got '" + text + "'"); };
    std::string mant = text;
    long exp10 = 0;
    if (auto e = text.find_first_of("eE"); e != std::string::npos) {
        mant = text.substr(0, e);
        const std::string ex = text.substr(e + 1);
        if (ex.empty() || ex.size() > 3 || ex.find_first_not_of("0123456789") != std::string::npos) return bad();
        exp10 = std::stol(ex);
    }
    std::string digits = mant;
    if (auto dot = mant.find('.'); dot != std::string::npos) {
        digits = mant.substr(0, dot) + mant.substr(dot + 1);
        exp10 -= static_cast<long>(mant.size() - dot - 1);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) return bad();
    while (exp10 < 0) {
        if (digits.back() != '0') return bad();
        digits.pop_back();
        ++exp10;
        if (digits.empty()) digits = "0";
    }
    digits.append(static_cast<std::size_t>(exp10), '0');
    const auto first = digits.find_first_not_of('0');
    if (first == std::string::npos) return 0;
    digits = digits.substr(first);
    if (digits.size() > 20) return bad();
    try {
        std::size_t used = 0;
        const u64 v = std::stoull(digits, &used);
        if (used != digits.size()) return bad();
        return v;
    } catch (const std::out_of_range&) {
        return bad();
    }
}

Rational parse_rho(const std::string& text) {
    try {
        return parse_rational(text);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("--rho0: ") + e.what());
    }
}

double parse_real(const std::string& flag, const std::string& text) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty()) throw ConfigError(flag + ": expected a number, got '" + text + "'");
    return v;
}

RootMethod parse_method(const std::string& name) {
    if (name == "primitive-root") return RootMethod::PrimitiveRoot;
    if (name == "factor") return RootMethod::Factor;
    throw ConfigError("--method must be primitive-root or factor, got '" + name + "'");
}

void warn(const std::string& msg) { std::cerr << "warning: " << msg << '\n'; }

// Flags shared by scan, count and estimate; kept as text so "1e8" works for integers.
struct ConfigFlags {
    unsigned k = 3;
    u64 D = 1;
    std::string rho0 = "1.7";
    std::string min = "2";
    std::string max;

    void add_to(CLI::App* cmd, bool need_range) {
        cmd->add_option("--k", k, "embedding degree (>= 3)");
        cmd->add_option("--D", D, "square-free CM parameter");
        cmd->add_option("--rho0", rho0, "rho bound, exact decimal such as 1.7");
        cmd->add_option("--min", min, "smallest r");
        auto* mx = cmd->add_option("--max", max, "largest r");
        if (need_range) mx->required();
    }

    ScanConfig scan_config() const {
        ScanConfig cfg;
        cfg.k = k;
        cfg.D = D;
        cfg.rho0 = parse_rho(rho0);
        cfg.min_r = parse_count("--min", min);
        cfg.max_r = parse_count("--max", max);
        cfg.validate();
        return cfg;
    }
};

struct ScanFlags {
    ConfigFlags cfg;
    std::string format = "csv";
    std::string out;
    std::string checkpoint;
    unsigned threads = 0;
    std::string method = "primitive-root";
    std::string block = "1000000";
};

ScanOptions scan_options(const ScanFlags& f) {
    ScanOptions o;
    o.threads = f.threads;
    o.method = parse_method(f.method);
    o.block_width = parse_count("--block", f.block);
    if (o.block_width == 0) throw ConfigError("--block must be positive");
    o.on_warning = warn;
    return o;
}

int run_scan(const ScanFlags& f) {
    DriveOptions d;
    d.scan = scan_options(f);
    d.format = parse_format(f.format);
    d.out_path = f.out;
    d.checkpoint_path = f.checkpoint;
    drive_scan(f.cfg.scan_config(), d, std::cout);
    return 0;
}

int run_count(const ScanFlags& f) {
    std::cout << count_triples(f.cfg.scan_config(), scan_options(f)) << '\n';
    return 0;
}

struct EstimateFlags {
    ConfigFlags cfg;
    bool i0 = false;
    bool closed_form = false;
    bool variable_d = false;
    std::string z;
};

int run_estimate(const EstimateFlags& f) {
    const double rho = parse_real("--rho0", f.cfg.rho0);
    if (f.variable_d) {
        if (f.z.empty()) throw ConfigError("--variable-d needs --z");
        const u64 z = parse_count("--z", f.z);
        if (z < 3) throw ConfigError("--z must be >= 3");
        const auto [sum, asym] = inverse_class_number_sum(z);
        std::printf("inverse_h_sum=%.4f asymptote=%.4f\n", sum, asym);
        if (!f.cfg.max.empty()) {
            const double x = static_cast<double>(parse_count("--max", f.cfg.max));
            std::printf("weighted_sum=%.4f estimate=%.4f\n", variable_d_sum(f.cfg.k, z, rho),
                        variable_d_estimate(f.cfg.k, z, rho, x).value);
        }
        return 0;
    }
    if (f.cfg.max.empty()) throw ConfigError("--max is required");
    const double b = static_cast<double>(parse_count("--max", f.cfg.max));
    if (f.closed_form) {
        std::printf("%.4f\n", closed_form_estimate(f.cfg.k, f.cfg.D, rho, b));
        return 0;
    }
    const double a = static_cast<double>(parse_count("--min", f.cfg.min));
    const EstimateResult r = f.i0 ? i_zero(f.cfg.D, rho, a, b) : heuristic_integral(f.cfg.k, f.cfg.D, rho, a, b);
    std::printf("%.4f\n", r.value);
    return 0;
}

struct FamilyFlags {
    std::string name;
    std::string file;
    bool verify = false;
    std::string rmin = "2";
    std::string rmax;
    std::string rho0;
    std::string format = "csv";
    bool estimate = false;
    double c_prime = 2 * 17.651;
};

int run_family(const FamilyFlags& f) {
    PolynomialFamily fam;
    if (!f.file.empty()) {
        std::ifstream in(f.file);
        if (!in) throw ConfigError("--file: cannot open " + f.file);
        fam = parse_family(in);
    } else {
        try {
            fam = builtin_family(f.name.empty() ? "bn" : f.name);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("--name: ") + e.what());
        }
    }
    const FamilyCheck check = verify_family(fam);
    if (f.verify) {
        if (!check.ok) {
            std::cout << "failed: " << check.failed << '\n';
            return kExitVerify;
        }
        std::cout << "ok\n";
        return 0;
    }
    if (!check.ok) {
        std::cerr << "error: family fails identity " << check.failed << '\n';
        return kExitVerify;
    }
    if (f.rmax.empty()) throw ConfigError("--rmax is required");
    const u64 lo = parse_count("--rmin", f.rmin), hi = parse_count("--rmax", f.rmax);
    if (lo > hi) throw ConfigError("--rmin must not exceed --rmax");
    if (f.estimate) {
        std::printf("%.4f\n", family_count_estimate(fam, f.c_prime, static_cast<double>(lo), static_cast<double>(hi)).value);
        return 0;
    }
    std::optional<Rational> rho;
    if (!f.rho0.empty()) rho = parse_rho(f.rho0);
    RecordSink sink(std::cout, parse_format(f.format));
    sink.header();
    for (const auto& s : scan_family(fam, lo, hi, rho)) sink.write(s);
    return 0;
}

struct BhFlags {
    std::string cutoff = "1000000";
    std::string gamma = "3";
    double residue_r0 = 0.36105;
    double residue_p0 = 0.52642;
};

int run_bh(const BhFlags& f) {
    DSConstants c;
    c.cutoff = parse_count("--cutoff", f.cutoff);
    c.gamma = parse_rho(f.gamma);
    c.residue_r0 = f.residue_r0;
    c.residue_p0 = f.residue_p0;
    const BHResult r = bh_constant(c);
    std::printf("P1=%.5f P2=%.5f C=%.5f\n", r.first, r.second, r.C);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pairing-friendly curve parameter search and heuristic estimates"};
    app.require_subcommand(1);

    ScanFlags scan_f, count_f;
    auto* scan = app.add_subcommand("scan", "emit all (r, t, y) records in a range");
    scan_f.cfg.add_to(scan, true);
    scan->add_option("--format", scan_f.format, "csv or jsonl");
    scan->add_option("--out", scan_f.out, "output file (default stdout)");
    scan->add_option("--checkpoint", scan_f.checkpoint, "checkpoint file for resumable runs");
    scan->add_option("--threads", scan_f.threads, "worker threads (0 = all)");
    scan->add_option("--method", scan_f.method, "primitive-root or factor");
    scan->add_option("--block", scan_f.block, "block width in r");

    auto* count = app.add_subcommand("count", "number of records in a range");
    count_f.cfg.add_to(count, true);
    count->add_option("--threads", count_f.threads, "worker threads (0 = all)");
    count->add_option("--method", count_f.method, "primitive-root or factor");
    count->add_option("--block", count_f.block, "block width in r");

    EstimateFlags est_f;
    auto* est = app.add_subcommand("estimate", "heuristic integral and related predictions");
    est_f.cfg.add_to(est, false);
    est->add_flag("--i0", est_f.i0, "omit the e(k, D) factor");
    est->add_flag("--closed-form", est_f.closed_form, "closed form at x = --max");
    est->add_flag("--variable-d", est_f.variable_d, "sums over fields with |d| <= z");
    est->add_option("--z", est_f.z, "discriminant bound for --variable-d");

    FamilyFlags fam_f;
    auto* fam = app.add_subcommand("family", "complete polynomial families");
    fam->add_option("--name", fam_f.name, "bn, k3 or k3b");
    fam->add_option("--file", fam_f.file, "family document");
    fam->add_flag("--verify", fam_f.verify, "check the family identities");
    fam->add_option("--rmin", fam_f.rmin, "smallest r");
    fam->add_option("--rmax", fam_f.rmax, "largest r");
    fam->add_option("--rho0", fam_f.rho0, "optional rho bound");
    fam->add_option("--format", fam_f.format, "csv or jsonl");
    fam->add_flag("--estimate", fam_f.estimate, "Bateman-Horn count estimate over [rmin, rmax]");
    fam->add_option("--c-prime", fam_f.c_prime, "Bateman-Horn constant C' (default 2 * 17.651)");

    BhFlags bh_f;
    auto* bh = app.add_subcommand("bh", "Bateman-Horn constant of the BN pair");
    bh->add_option("--cutoff", bh_f.cutoff, "prime cutoff for the products");
    bh->add_option("--gamma", bh_f.gamma, "gamma (exact rational)");
    bh->add_option("--residue-r0", bh_f.residue_r0, "zeta residue for r0");
    bh->add_option("--residue-p0", bh_f.residue_p0, "zeta residue for p0");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*scan) return run_scan(scan_f);
        if (*count) return run_count(count_f);
        if (*est) return run_estimate(est_f);
        if (*fam) return run_family(fam_f);
        if (*bh) return run_bh(bh_f);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
