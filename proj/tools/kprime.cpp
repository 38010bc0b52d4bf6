// kprime: command-line surface for the prime-race toolkit.
//
// Subcommands: zeros find|import|validate, sieve, race,
// density table|asymptotic|variance|predict, expand, heuristic parity,
// hankel check. Outputs are deterministic CSV/TSV; numbers accept
// scientific notation; a key=value config file can preload any option
// (explicit flags win). Exit codes: 0 success, 1 domain error,
// 2 validation failure, 3 resource/accuracy error, 64 usage error.

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "kprime/characters.hpp"
#include "kprime/density_engine.hpp"
#include "kprime/errors.hpp"
#include "kprime/hankel_lab.hpp"
#include "kprime/parity_heuristic.hpp"
#include "kprime/race_census.hpp"
#include "kprime/series_algebra.hpp"
#include "kprime/zero_catalog.hpp"

namespace {

using namespace kprime;

u64 as_u64(double v, const char* name) {
    if (!(v >= 0.0) || v != std::floor(v) || v > 9.0e18)
        throw domain_error(std::string(name) + " must be a nonnegative integer");
    return static_cast<u64>(v);
}

int as_int(double v, const char* name) {
    if (!(v >= -2.0e9) || !(v <= 2.0e9) || v != std::floor(v))
        throw domain_error(std::string(name) + " must be an integer");
    return static_cast<int>(v);
}

std::string shortest(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

/// Stream sink: "-" or empty means stdout, otherwise a file.
class output_target {
  public:
    explicit output_target(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) throw domain_error("cannot open output file " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

std::string default_zeros_path(u64 q) {
    const char* dir = std::getenv("KPRIME_ZEROS_DIR");
    if (dir == nullptr || *dir == '\0') return {};
    return std::string(dir) + "/zeros_q" + std::to_string(q) + ".tsv";
}

/// Loads a zero catalog for q: an explicit --zeros file, else the
/// KPRIME_ZEROS_DIR copy, else the internal finder up to height T.
zero_catalog load_catalog(u64 q, const std::string& zeros_path, double T,
                          unsigned threads) {
    std::string path = zeros_path;
    if (path.empty()) {
        const std::string fallback = default_zeros_path(q);
        if (!fallback.empty() && std::ifstream(fallback).good()) path = fallback;
    }
    if (path.empty()) return find_all_zeros(q, T, 1e-10, 0.05, threads);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw domain_error("cannot open zero file " + path);
    return import_zeros(in, q);
}

/// The largest height every list in the catalog can attest.
double catalog_height(const zero_catalog& cat) {
    double height = std::numeric_limits<double>::infinity();
    for (const auto& [label, list] : cat.lists)
        height = std::min(height, list.height_limit);
    return height;
}

/// Validates and marks the catalog at its own full height; exits the
/// command with a validation error if the counts are off.
void require_valid(zero_catalog& cat, const character_group& g) {
    const double height = catalog_height(cat);
    const auto report = validate(cat, g, height);
    if (!report.pass)
        throw validation_error("zero catalog failed count validation at height " +
                               shortest(height));
}

unsigned default_threads() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

count_flavor parse_flavor(const std::string& name) {
    if (name == "omega") return count_flavor::omega;
    if (name == "bigomega") return count_flavor::big_omega;
    throw domain_error("flavor must be omega or bigomega");
}

std::vector<u64> parse_checkpoints(const std::string& text) {
    std::vector<u64> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(as_u64(std::stod(item), "checkpoint"));
    }
    return out;
}

struct cli_options {
    double q = 0, a = 0, b = 0, k = 0, kmax = 10, bigk = 0, x = 0, bigx = 0;
    double t = 1000.0, t0 = 0.0, step = 0.05;  // t0 = 0: catalog height
    double tolerance = 0.0;  // 0 = module default / no cap
    double amplitude = -1.0;
    double center = 0.5;
    unsigned threads = default_threads();
    bool no_tail = false, brute = false, sign_change = false;
    std::string zeros, in_path, out_path, curve_path, flavor = "bigomega";
    std::string checkpoints, logx = "20,35,50";
    int verify_n = 0;
};

quadrature_config make_quadrature(const cli_options& opt) {
    quadrature_config qc;
    qc.tail_correction = !opt.no_tail;
    return qc;
}

void cap_error(double est, double cap) {
    if (cap > 0.0 && est > cap)
        throw accuracy_error("achievable error estimate " + shortest(est) +
                             " exceeds requested tolerance " + shortest(cap));
}

int run_zeros_find(const cli_options& opt) {
    const u64 q = as_u64(opt.q, "--q");
    const double tol = opt.tolerance > 0.0 ? opt.tolerance : 1e-10;
    const auto cat = find_all_zeros(q, opt.t, tol, opt.step, opt.threads);
    output_target out(opt.out_path.empty() ? default_zeros_path(q)
                                           : opt.out_path);
    serialize_catalog(cat, out.stream());
    return 0;
}

int run_zeros_import(const cli_options& opt) {
    const u64 q = as_u64(opt.q, "--q");
    std::ifstream in(opt.in_path, std::ios::binary);
    if (!in) throw domain_error("cannot open input file " + opt.in_path);
    const auto cat = import_zeros(in, q);
    output_target out(opt.out_path.empty() ? default_zeros_path(q)
                                           : opt.out_path);
    serialize_catalog(cat, out.stream());
    return 0;
}

int run_zeros_validate(const cli_options& opt, bool explicit_height) {
    const u64 q = as_u64(opt.q, "--q");
    const auto group = build_group(q);
    auto cat = load_catalog(q, opt.zeros, opt.t, opt.threads);
    const double height = explicit_height ? opt.t : catalog_height(cat);
    const auto report = validate(cat, group, height);
    for (const auto& c : report.checks)
        std::cout << "label=" << c.label << " observed=" << c.observed
                  << " expected=" << shortest(c.expected)
                  << " tolerance=" << shortest(c.tolerance)
                  << " count=" << (c.count_ok ? "ok" : "bad")
                  << " ordering=" << (c.ordering_ok ? "ok" : "bad") << "\n";
    std::cout << (report.pass ? "pass" : "fail") << " at height "
              << shortest(report.height) << "\n";
    if (!report.pass) throw validation_error("zero catalog failed validation");
    return 0;
}

int run_sieve(const cli_options& opt) {
    const u64 q = as_u64(opt.q, "--q");
    const u64 x = as_u64(opt.bigx, "--X");
    const auto series = census(x, q, parse_checkpoints(opt.checkpoints),
                               opt.threads);
    output_target out(opt.out_path);
    write_counts_csv(series, out.stream());
    return 0;
}

int run_race(const cli_options& opt) {
    const u64 q = as_u64(opt.q, "--q");
    const u64 a = as_u64(opt.a, "--a"), b = as_u64(opt.b, "--b");
    const u64 x = as_u64(opt.bigx, "--X");
    const int k = as_int(opt.k, "--k");
    const auto flavor = parse_flavor(opt.flavor);
    if (q < 3 || std::gcd(a, q) != 1 || std::gcd(b, q) != 1)
        throw domain_error("race residues must be coprime to the modulus");
    if (opt.sign_change) {
        const auto found = first_sign_change(flavor, k, q, a, b, x);
        if (found)
            std::cout << "first_sign_change=" << *found << "\n";
        else
            std::cout << "first_sign_change=none\n";
        return 0;
    }
    const auto series = census(x, q, parse_checkpoints(opt.checkpoints),
                               opt.threads);
    const i64 gap = delta(series, flavor, k, a, b, x);
    std::cout << "delta=" << gap << "\n";
    if (!opt.curve_path.empty()) {
        const auto curve = bias_curve(series, flavor, k, a, b);
        output_target out(opt.curve_path);
        write_curve_csv(curve, out.stream());
    }
    return 0;
}

int run_density_table(const cli_options& opt) {
    const u64 q = as_u64(opt.q, "--q");
    const u64 a = as_u64(opt.a, "--a"), b = as_u64(opt.b, "--b");
    const int kmax = as_int(opt.kmax, "--kmax");
    const auto group = build_group(q);
    auto cat = load_catalog(q, opt.zeros, opt.t, opt.threads);
    require_valid(cat, group);
    const auto prof = build_profile(group, cat, a, b);
    density_session session(prof);
    const auto qc = make_quadrature(opt);
    output_target out(opt.out_path);
    out.stream() << "flavor,k,q,a,b,delta,est_error\n";
    for (int k = 1; k <= kmax; ++k)
        for (auto flavor : {count_flavor::omega, count_flavor::big_omega}) {
            const auto r = session.density(flavor, k, qc);
            cap_error(r.est_error, opt.tolerance);
            out.stream() << (flavor == count_flavor::omega ? "omega"
                                                           : "bigomega")
                         << ',' << k << ',' << q << ',' << a << ',' << b << ','
                         << shortest(r.value) << ',' << shortest(r.est_error)
                         << "\n";
        }
    return 0;
}

int run_density_asymptotic(const cli_options& opt) {
    const u64 q = as_u64(opt.q, "--q");
    const u64 a = as_u64(opt.a, "--a"), b = as_u64(opt.b, "--b");
    const int k = as_int(opt.k, "--k"), bigk = as_int(opt.bigk, "--K");
    const auto group = build_group(q);
    auto cat = load_catalog(q, opt.zeros, opt.t, opt.threads);
    require_valid(cat, group);
    const auto prof = build_profile(group, cat, a, b);
    density_session session(prof);
    const auto qc = make_quadrature(opt);
    std::vector<double> moments;
    for (int j = 0; j <= bigk; ++j) {
        const auto m = session.moment(j, qc);
        cap_error(m.est_error, opt.tolerance);
        moments.push_back(m.value);
    }
    u64 amplitude;
    if (opt.amplitude >= 0.0) {
        amplitude = as_u64(opt.amplitude, "--A");
    } else {
        long long sum = 0;
        for (const auto& chi : group.characters)
            if (chi.real && !chi.principal)
                sum += static_cast<long long>(chi(b).real()) -
                       static_cast<long long>(chi(a).real());
        if (sum < 0)
            throw domain_error(
                "real characters favor b over a; swap --a/--b or pass --A");
        amplitude = static_cast<u64>(sum);
    }
    const double v = asymptotic_density(parse_flavor(opt.flavor), k, bigk,
                                        moments, amplitude);
    std::cout << "asymptotic_delta=" << shortest(v) << "\n";
    return 0;
}

int run_density_variance(const cli_options& opt) {
    const u64 q = as_u64(opt.q, "--q");
    const u64 a = as_u64(opt.a, "--a"), b = as_u64(opt.b, "--b");
    const auto group = build_group(q);
    auto cat = load_catalog(q, opt.zeros, opt.t, opt.threads);
    require_valid(cat, group);
    const auto v = variance(group, cat, a, b);
    std::cout << "variance=" << shortest(v.value)
              << " tail=" << shortest(v.tail) << "\n";
    return 0;
}

int run_density_predict(const cli_options& opt) {
    const u64 q = as_u64(opt.q, "--q");
    const u64 a = as_u64(opt.a, "--a"), b = as_u64(opt.b, "--b");
    const int k = as_int(opt.k, "--k");
    const auto group = build_group(q);
    auto cat = load_catalog(q, opt.zeros, std::max(opt.t, opt.t0), opt.threads);
    require_valid(cat, group);
    double t0 = opt.t0;
    if (t0 <= 0.0)
        for (const auto& [label, list] : cat.lists)
            t0 = t0 <= 0.0 ? list.height_limit : std::min(t0, list.height_limit);
    const double v = predict_delta(parse_flavor(opt.flavor), k, group, cat, a,
                                   b, t0, opt.x);
    std::cout << "predicted_delta=" << shortest(v) << "\n";
    return 0;
}

int run_expand(const cli_options& opt) {
    const int k = as_int(opt.k, "--k");
    const auto flavor = parse_flavor(opt.flavor);
    const auto e = flavor == count_flavor::big_omega ? expand_bigomega(k)
                                                     : expand_omega(k);
    if (opt.verify_n > 0) {
        const auto report = verify_expansion(e, static_cast<u64>(opt.verify_n));
        if (!report.pass)
            throw validation_error("expansion mismatch at n = " +
                                   std::to_string(report.first_mismatch));
    }
    output_target out(opt.out_path);
    write_expansion(e, out.stream());
    return 0;
}

int run_heuristic_parity(const cli_options& opt) {
    const u64 x = as_u64(opt.bigx, "--X");
    const int kmax = as_int(opt.kmax, "--kmax");
    const auto pool = make_pool(x);
    const auto table = heuristic_table(pool, kmax);
    if (opt.brute) {
        const auto oracle = brute_force_table(x, kmax);
        for (int k = 0; k <= kmax; ++k)
            if (table.v1[static_cast<std::size_t>(k)] !=
                    oracle.v1[static_cast<std::size_t>(k)] ||
                table.v2[static_cast<std::size_t>(k)] !=
                    oracle.v2[static_cast<std::size_t>(k)])
                throw validation_error(
                    "heuristic disagrees with brute force at k = " +
                    std::to_string(k));
    }
    output_target out(opt.out_path);
    write_parity_csv(table, out.stream());
    return 0;
}

int run_hankel_check(const cli_options& opt) {
    const int kmax = as_int(opt.kmax, "--kmax");
    if (kmax < 1 || kmax > 8)
        throw domain_error("--kmax must lie in [1, 8]");
    std::vector<double> logxs;
    {
        std::stringstream ss(opt.logx);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) logxs.push_back(std::stod(item));
    }
    const auto derivs = recip_gamma_derivs(std::max(kmax, 2));
    const cplx a(opt.center, 0.0);
    output_target out(opt.out_path);
    out.stream() << "k,a,x,gap_rel,bound,pass\n";
    bool all_pass = true;
    for (int k = 1; k <= kmax; ++k)
        for (double lx : logxs) {
            const double x = std::exp(lx);
            hankel_contour contour{a, 0.2, 1e-3, 64};
            const cplx integral = hankel_integral(k, contour, x);
            const cplx main = main_term(k, a, x, derivs);
            const double gap = std::abs(integral - main) / std::abs(integral);
            // Envelope for the next-order term: the dropped corrections
            // are O((loglog x)^k / log x) relative to the main term.
            const double bound =
                2.0 * std::pow(std::max(std::log(lx), 1.0), k) / lx;
            const bool pass = gap <= bound;
            all_pass = all_pass && pass;
            out.stream() << k << ',' << shortest(opt.center) << ','
                         << shortest(x) << ',' << shortest(gap) << ','
                         << shortest(bound) << ',' << (pass ? "1" : "0")
                         << "\n";
        }
    if (!all_pass)
        throw validation_error("main-term gap exceeded the envelope bound");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"prime-race toolkit: zero catalogs, factor-count censuses, "
                 "logarithmic densities, symbolic expansions"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value configuration file");
    app.fallthrough();

    cli_options opt;
    int exit_code = 0;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--threads", opt.threads, "worker threads");
        cmd->add_option("--tolerance", opt.tolerance,
                        "error cap; exceeding it exits 3");
    };

    auto* zeros = app.add_subcommand("zeros", "zero catalog management");
    zeros->require_subcommand(1);
    auto* zfind = zeros->add_subcommand("find", "compute zeros (q = 3 or 4)");
    zfind->add_option("--q", opt.q, "modulus")->required();
    zfind->add_option("--T", opt.t, "height limit");
    zfind->add_option("--step", opt.step, "initial scan spacing");
    zfind->add_option("--out", opt.out_path, "output TSV (default: "
                      "KPRIME_ZEROS_DIR/zeros_q<q>.tsv, else stdout)");
    add_common(zfind);
    zfind->callback([&] { exit_code = run_zeros_find(opt); });

    auto* zimport = zeros->add_subcommand("import", "canonicalize a zero file");
    zimport->add_option("--q", opt.q, "modulus")->required();
    zimport->add_option("--in", opt.in_path, "input TSV")->required();
    zimport->add_option("--out", opt.out_path, "output TSV");
    zimport->callback([&] { exit_code = run_zeros_import(opt); });

    auto* zvalidate = zeros->add_subcommand("validate", "zero-count check");
    zvalidate->add_option("--q", opt.q, "modulus")->required();
    zvalidate->add_option("--zeros", opt.zeros, "zero TSV file");
    auto* vheight = zvalidate->add_option(
        "--T", opt.t, "validation height (default: catalog height)");
    add_common(zvalidate);
    zvalidate->callback(
        [&, vheight] { exit_code = run_zeros_validate(opt, vheight->count() > 0); });

    auto* sieve = app.add_subcommand("sieve", "factor-count census CSV");
    sieve->add_option("--q", opt.q, "modulus")->required();
    sieve->add_option("--X", opt.bigx, "sieve limit")->required();
    sieve->add_option("--checkpoints", opt.checkpoints,
                      "comma-separated checkpoint list");
    sieve->add_option("--out", opt.out_path, "output CSV (default stdout)");
    add_common(sieve);
    sieve->callback([&] { exit_code = run_sieve(opt); });

    auto* race = app.add_subcommand("race", "prime-race deltas and curves");
    race->add_option("--q", opt.q, "modulus")->required();
    race->add_option("--a", opt.a, "first residue")->required();
    race->add_option("--b", opt.b, "second residue")->required();
    race->add_option("--k", opt.k, "number of prime factors")->required();
    race->add_option("--X", opt.bigx, "race limit")->required();
    race->add_option("--flavor", opt.flavor, "omega or bigomega");
    race->add_option("--curve", opt.curve_path, "write normalized bias curve");
    race->add_flag("--sign-change", opt.sign_change,
                   "print first sign change instead");
    race->add_option("--checkpoints", opt.checkpoints,
                     "comma-separated checkpoint list");
    add_common(race);
    race->callback([&] { exit_code = run_race(opt); });

    auto* density = app.add_subcommand("density", "logarithmic densities");
    density->require_subcommand(1);
    auto add_density_common = [&](CLI::App* cmd, bool with_ab = true) {
        cmd->add_option("--q", opt.q, "modulus")->required();
        if (with_ab) {
            cmd->add_option("--a", opt.a, "first residue")->required();
            cmd->add_option("--b", opt.b, "second residue")->required();
        }
        cmd->add_option("--zeros", opt.zeros, "zero TSV file (default: "
                        "KPRIME_ZEROS_DIR copy, else internal finder)");
        cmd->add_option("--T", opt.t, "internal finder height");
        cmd->add_flag("--no-tail", opt.no_tail, "disable tail correction");
        add_common(cmd);
    };
    auto* dtable = density->add_subcommand("table", "delta table CSV");
    add_density_common(dtable);
    dtable->add_option("--kmax", opt.kmax, "largest k");
    dtable->add_option("--out", opt.out_path, "output CSV (default stdout)");
    dtable->callback([&] { exit_code = run_density_table(opt); });

    auto* dasym = density->add_subcommand("asymptotic", "moment expansion");
    add_density_common(dasym);
    dasym->add_option("--k", opt.k, "number of prime factors")->required();
    dasym->add_option("--K", opt.bigk, "expansion order");
    dasym->add_option("--A", opt.amplitude, "real-character amplitude");
    dasym->add_option("--flavor", opt.flavor, "omega or bigomega");
    dasym->callback([&] { exit_code = run_density_asymptotic(opt); });

    auto* dvar = density->add_subcommand("variance", "zero-sum variance");
    add_density_common(dvar);
    dvar->callback([&] { exit_code = run_density_variance(opt); });

    auto* dpredict = density->add_subcommand("predict", "explicit-formula "
                                             "prediction at finite x");
    add_density_common(dpredict);
    dpredict->add_option("--k", opt.k, "number of prime factors")->required();
    dpredict->add_option("--x", opt.x, "evaluation point")->required();
    dpredict->add_option("--T0", opt.t0,
                         "zero height cutoff (default: catalog height)");
    dpredict->add_option("--flavor", opt.flavor, "omega or bigomega");
    dpredict->callback([&] { exit_code = run_density_predict(opt); });

    auto* expand = app.add_subcommand("expand", "symbolic product expansion");
    expand->add_option("--flavor", opt.flavor, "omega or bigomega");
    expand->add_option("--k", opt.k, "number of prime factors")->required();
    expand->add_option("--verify", opt.verify_n,
                       "cross-check coefficients up to this n");
    expand->add_option("--out", opt.out_path, "output TSV (default stdout)");
    expand->callback([&] { exit_code = run_expand(opt); });

    auto* heuristic = app.add_subcommand("heuristic", "counting heuristics");
    heuristic->require_subcommand(1);
    auto* parity = heuristic->add_subcommand("parity", "mod-4 parity recount");
    parity->add_option("--X", opt.bigx, "prime pool limit")->required();
    parity->add_option("--kmax", opt.kmax, "largest k");
    parity->add_flag("--brute", opt.brute, "cross-check against enumeration");
    parity->add_option("--out", opt.out_path, "output CSV (default stdout)");
    parity->callback([&] { exit_code = run_heuristic_parity(opt); });

    auto* hankel = app.add_subcommand("hankel", "contour-integral laboratory");
    hankel->require_subcommand(1);
    auto* hcheck = hankel->add_subcommand("check", "main-term gap grid");
    hcheck->add_option("--kmax", opt.kmax, "largest log power")->default_val(3);
    hcheck->add_option("--a", opt.center, "branch point (real)");
    hcheck->add_option("--logx", opt.logx, "comma-separated log x values");
    hcheck->add_option("--out", opt.out_path, "output CSV (default stdout)");
    hcheck->callback([&] { exit_code = run_hankel_check(opt); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const resource_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const accuracy_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return exit_code;
}
