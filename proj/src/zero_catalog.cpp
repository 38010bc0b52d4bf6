// Critical-line zero lists: scanning finder, TSV persistence, validation.
//
// The finder walks a uniform grid in t looking for sign changes of the
// rotated critical-line function and bisects each bracket. Completeness
// is checked against the smooth zero-counting main term for the
// character's conductor; a miss (a close pair straddling one grid cell)
// triggers a rescan on a halved grid.

#include "kprime/zero_catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <numeric>
#include <ostream>
#include <string>
#include <thread>

#include "kprime/errors.hpp"
#include "kprime/lfunc.hpp"

namespace kprime {
namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double bisect(const dirichlet_character& chi, double a, double b, double za,
              double tol) {
    for (int it = 0; it < 200 && (b - a) > tol; ++it) {
        const double m = 0.5 * (a + b);
        const double zm = rotated_l(m, chi);
        if (zm == 0.0) return m;
        if ((za < 0.0) == (zm < 0.0)) {
            a = m;
            za = zm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

/// Zeros bracketed by the grid pairs (j, j+1), lo <= j < hi. A zero
/// sitting exactly on a grid point is owned by the pair on its left.
std::vector<double> scan_chunk(const dirichlet_character& chi,
                               const std::vector<double>& grid, u64 lo,
                               u64 hi, double tol) {
    std::vector<double> out;
    double za = rotated_l(grid[lo], chi);
    for (u64 j = lo; j < hi; ++j) {
        const double zb = rotated_l(grid[j + 1], chi);
        if (zb == 0.0)
            out.push_back(grid[j + 1]);
        else if ((za < 0.0 && zb > 0.0) || (za > 0.0 && zb < 0.0))
            out.push_back(bisect(chi, grid[j], grid[j + 1], za, tol));
        za = zb;
    }
    return out;
}

std::vector<double> scan(const dirichlet_character& chi, double T, double tol,
                         double step, unsigned threads) {
    std::vector<double> grid;
    const auto n_steps = static_cast<u64>(std::floor(T / step + 1e-9));
    grid.reserve(n_steps + 2);
    grid.push_back(1e-3);
    for (u64 j = 1; j <= n_steps; ++j)
        grid.push_back(static_cast<double>(j) * step);
    if (grid.back() < T - 1e-12) grid.push_back(T);

    const u64 pairs = grid.size() - 1;
    const u64 chunks = std::min<u64>(std::max(1u, threads), pairs);
    std::vector<std::vector<double>> found(chunks);
    std::vector<std::thread> pool;
    for (u64 c = 1; c < chunks; ++c)
        pool.emplace_back([&, c] {
            found[c] = scan_chunk(chi, grid, pairs * c / chunks,
                                  pairs * (c + 1) / chunks, tol);
        });
    found[0] = scan_chunk(chi, grid, 0, pairs / chunks, tol);
    for (auto& th : pool) th.join();

    std::vector<double> zeros;
    for (auto& part : found)
        zeros.insert(zeros.end(), part.begin(), part.end());
    return zeros;
}

/// Consecutive-ordinate interval most out of line with the local
/// expected spacing 2 pi / log(cond t / 2 pi); used in failure messages.
std::pair<double, double> suspect_interval(const std::vector<double>& zeros,
                                           u64 cond, double T) {
    if (zeros.empty()) return {0.0, T};
    std::pair<double, double> worst{0.0, zeros.front()};
    double worst_ratio = 0.0;
    std::vector<double> pts(zeros);
    pts.insert(pts.begin(), 1e-3);
    pts.push_back(T);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double t = std::max(pts[i + 1], 10.0);
        const double spacing =
            two_pi / std::max(1.0, std::log(static_cast<double>(cond) * t /
                                            two_pi));
        const double ratio = (pts[i + 1] - pts[i]) / spacing;
        if (ratio > worst_ratio) {
            worst_ratio = ratio;
            worst = {pts[i], pts[i + 1]};
        }
    }
    return worst;
}

std::size_t count_up_to(const std::vector<double>& gammas, double T) {
    return static_cast<std::size_t>(
        std::upper_bound(gammas.begin(), gammas.end(), T) - gammas.begin());
}

}  // namespace

double expected_zero_count(u64 conductor, double T) {
    if (T <= 0.0) throw domain_error("zero count height must be positive");
    const double c = static_cast<double>(conductor);
    return T / two_pi * std::log(c * T / (two_pi * std::numbers::e));
}

zero_list find_zeros(const dirichlet_character& chi, double T, double tol,
                     double step, unsigned threads) {
    if (chi.principal || !chi.real || !chi.is_primitive())
        throw domain_error(
            "internal zero finder supports real primitive non-principal "
            "characters only; import zeros for other characters");
    if (chi.conductor > 10)
        throw domain_error(
            "internal zero finder supports conductor <= 10; import zeros "
            "for larger conductors");
    if (T < 0.01 || T > 2500.0)
        throw domain_error("zero scan height must be in [0.01, 2500]");
    if (tol < 1e-10) throw domain_error("zero tolerance must be >= 1e-10");
    if (step <= 0.0 || step > 1.0)
        throw domain_error("zero scan step must be in (0, 1]");

    const double expected = expected_zero_count(chi.conductor, T);
    const double allowance =
        2.0 * std::log(static_cast<double>(chi.q) * T);
    std::vector<double> zeros;
    for (int attempt = 0; attempt <= 4; ++attempt, step *= 0.5) {
        zeros = scan(chi, T, tol, step, threads);
        if (std::abs(static_cast<double>(zeros.size()) - expected) <=
            allowance) {
            zero_list list;
            list.character_label = chi.label;
            list.gammas = std::move(zeros);
            list.height_limit = T;
            list.precision = tol;
            return list;
        }
    }
    const auto [lo, hi] = suspect_interval(zeros, chi.conductor, T);
    throw accuracy_error(
        "zero scan incomplete for modulus " + std::to_string(chi.q) +
        ", label " + std::to_string(chi.label) + ": found " +
        std::to_string(zeros.size()) + " ordinates vs expected " +
        std::to_string(expected) + "; suspect interval [" +
        std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

zero_catalog find_all_zeros(u64 q, double T, double tol, double step,
                            unsigned threads) {
    const character_group g = build_group(q);
    zero_catalog cat;
    cat.modulus = q;
    cat.provenance = zero_provenance::computed;
    for (const auto& chi : g.characters) {
        if (chi.principal) continue;
        cat.lists[chi.label] = find_zeros(chi, T, tol, step, threads);
    }
    return cat;
}

zero_catalog import_zeros(std::istream& in, u64 q) {
    if (q < 3) throw domain_error("zero catalog requires modulus >= 3");
    const std::string header =
        "# q=" + std::to_string(q) + " format=kprime-zeros-v1";
    zero_catalog cat;
    cat.modulus = q;
    cat.provenance = zero_provenance::imported;

    std::map<u64, std::vector<double>> lists;
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != header)
                throw parse_error(
                    "zero file must open with '" + header + "'", lineno);
            header_seen = true;
            continue;
        }
        if (line[0] == '#') continue;

        const auto tab1 = line.find('\t');
        const auto tab2 =
            tab1 == std::string::npos ? tab1 : line.find('\t', tab1 + 1);
        if (tab2 == std::string::npos ||
            line.find('\t', tab2 + 1) != std::string::npos)
            throw parse_error("expected <q>\\t<label>\\t<gamma>", lineno);

        u64 file_q = 0, label = 0;
        auto r1 = std::from_chars(line.data(), line.data() + tab1, file_q);
        if (r1.ec != std::errc{} || r1.ptr != line.data() + tab1 ||
            file_q != q)
            throw parse_error("modulus field must equal " + std::to_string(q),
                              lineno);
        auto r2 = std::from_chars(line.data() + tab1 + 1,
                                  line.data() + tab2, label);
        if (r2.ec != std::errc{} || r2.ptr != line.data() + tab2)
            throw parse_error("unreadable character label", lineno);
        if (label < 1 || label >= q || std::gcd(label, q) != 1)
            throw domain_error("line " + std::to_string(lineno) + ": label " +
                               std::to_string(label) +
                               " is not a unit mod " + std::to_string(q));

        double gamma = 0.0;
        auto r3 = std::from_chars(line.data() + tab2 + 1,
                                  line.data() + line.size(), gamma);
        if (r3.ec != std::errc{} || r3.ptr != line.data() + line.size() ||
            !std::isfinite(gamma))
            throw parse_error("unreadable ordinate", lineno);
        if (gamma <= 0.0)
            throw parse_error("ordinates must be positive", lineno);

        auto& gs = lists[label];
        if (!gs.empty() && gamma <= gs.back())
            throw validation_error(
                "line " + std::to_string(lineno) +
                ": ordinates for label " + std::to_string(label) +
                " must be strictly increasing");
        gs.push_back(gamma);
    }

    for (u64 n = 2; n < q; ++n) {
        if (std::gcd(n, q) != 1) continue;
        if (!lists.count(n))
            throw incompleteness_error(
                "no zeros for non-principal character label " +
                std::to_string(n) + " mod " + std::to_string(q));
    }

    for (auto& [label, gs] : lists) {
        zero_list list;
        list.character_label = label;
        list.height_limit = gs.back();
        list.precision = std::max(1e-12, 5e-12 * gs.back());
        list.gammas = std::move(gs);
        cat.lists[label] = std::move(list);
    }
    return cat;
}

void serialize_catalog(const zero_catalog& cat, std::ostream& out) {
    out << "# q=" << cat.modulus << " format=kprime-zeros-v1\n";
    char buf[40];
    for (const auto& [label, list] : cat.lists)
        for (double g : list.gammas) {
            std::snprintf(buf, sizeof buf, "%.12g", g);
            out << cat.modulus << '\t' << label << '\t' << buf << '\n';
        }
}

validation_report validate(zero_catalog& cat, const character_group& g,
                           double T) {
    if (g.q != cat.modulus)
        throw domain_error("catalog/group modulus mismatch");
    if (T <= 0.0) throw domain_error("validation height must be positive");

    validation_report rep;
    rep.height = T;
    rep.incomplete = cat.lists.empty();
    for (const auto& chi : g.characters)
        if (!chi.principal && !cat.lists.count(chi.label))
            rep.incomplete = true;

    bool all_ok = !rep.incomplete;
    for (const auto& [label, list] : cat.lists) {
        if (list.height_limit < T)
            throw domain_error("zero list for label " + std::to_string(label) +
                               " stops below the validation height");
        const auto& chi = g.by_label(label);
        zero_count_check c;
        c.label = label;
        c.observed = count_up_to(list.gammas, T);
        c.expected = expected_zero_count(chi.conductor, T);
        c.tolerance = 2.0 * std::log(static_cast<double>(g.q) * T);
        c.count_ok = std::abs(static_cast<double>(c.observed) - c.expected) <=
                     c.tolerance;
        c.ordering_ok = !list.gammas.empty() && list.gammas.front() > 0.0 &&
                        std::adjacent_find(list.gammas.begin(),
                                           list.gammas.end(),
                                           std::greater_equal<double>{}) ==
                            list.gammas.end();
        all_ok = all_ok && c.count_ok && c.ordering_ok;
        rep.checks.push_back(c);
    }
    rep.pass = all_ok;
    if (rep.pass) cat.validated_height = std::max(cat.validated_height, T);
    return rep;
}

}  // namespace kprime
