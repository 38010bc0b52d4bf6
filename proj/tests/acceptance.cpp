// End-to-end acceptance gate for the prime-race toolkit. Each criterion
// exercises one published claim or cross-module contract end to end --
// zero finding through density quadrature, census sieving through bias
// curves, exact symbolic expansions, the parity heuristic, and the
// Hankel-contour error lemmas -- and prints exactly one PASS or FAIL
// line so a harness can pin every claim separately. The tolerances are
// written out here on purpose: they are the contract, not knobs.
//
// Usage: acceptance --criterion N   (N = 1..11; no flag runs them all)

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <kprime/characters.hpp>
#include <kprime/density_engine.hpp>
#include <kprime/flavor.hpp>
#include <kprime/hankel_lab.hpp>
#include <kprime/parity_heuristic.hpp>
#include <kprime/race_census.hpp>
#include <kprime/series_algebra.hpp>
#include <kprime/zero_catalog.hpp>

namespace {

using namespace kprime;
using clock_type = std::chrono::steady_clock;

struct criterion_result {
    bool pass = false;
    std::string detail;
};

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

unsigned worker_threads() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

/// A character group plus a zero catalog found internally and validated
/// to the requested height; throws when validation fails so the runner
/// reports the criterion as failed with the reason.
struct race_setup {
    character_group g;
    zero_catalog cat;
};

race_setup make_setup(u64 q, double height) {
    race_setup s{build_group(q), find_all_zeros(q, height, 1e-10, 0.05,
                                                worker_threads())};
    if (!validate(s.cat, s.g, height).pass)
        throw std::runtime_error("zero catalog for q=" + std::to_string(q) +
                                 " failed count validation");
    return s;
}

std::string fmt(double x, int digits = 6) {
    std::ostringstream out;
    out << std::setprecision(digits) << x;
    return out.str();
}

// Reference logarithmic densities for the two races, k = 1..10.
const double ref_big3[10] = {0.99906, 0.069629, 0.766925, 0.35829, 0.571953,
                             0.463884, 0.518075, 0.49096, 0.50452, 0.49774};
const double ref_om3[10] = {0.00094, 0.069629, 0.233075, 0.35829, 0.428047,
                            0.463884, 0.481925, 0.49096, 0.49548, 0.49774};
const double ref_big4[10] = {0.9959, 0.10572, 0.730311, 0.380029, 0.56061,
                             0.469616, 0.515202, 0.492398, 0.503801, 0.498099};
const double ref_om4[10] = {0.0041, 0.10572, 0.269689, 0.380029, 0.43939,
                            0.469616, 0.484798, 0.492398, 0.496199, 0.498099};

/// Criterion 1: both density tables (q = 3 race 2 vs 1, q = 4 race 3 vs
/// 1), k = 1..10 and both factor-count flavors, reproduced within
/// 2e-3 from internally found zeros up to height 1000 with the tail
/// correction on, in under five minutes end to end.
criterion_result criterion_1() {
    const auto start = clock_type::now();
    const quadrature_config cfg;
    int ok = 0;
    double worst = 0.0;
    const struct {
        u64 q, a, b;
        const double* big;
        const double* om;
    } tables[2] = {{3, 2, 1, ref_big3, ref_om3}, {4, 3, 1, ref_big4, ref_om4}};
    for (const auto& t : tables) {
        const race_setup su = make_setup(t.q, 1000.0);
        density_session s(build_profile(su.g, su.cat, t.a, t.b));
        for (int k = 1; k <= 10; ++k) {
            const double db = s.density(count_flavor::big_omega, k, cfg).value;
            const double dw = s.density(count_flavor::omega, k, cfg).value;
            for (double err : {std::abs(db - t.big[k - 1]),
                               std::abs(dw - t.om[k - 1])}) {
                worst = std::max(worst, err);
                if (err <= 2e-3) ++ok;
            }
        }
    }
    const double elapsed = seconds_since(start);
    criterion_result r;
    r.pass = ok == 40 && elapsed < 300.0;
    r.detail = std::to_string(ok) + "/40 table entries within 2e-3 (worst " +
               fmt(worst, 3) + "), " + fmt(elapsed, 3) + " s";
    return r;
}

/// Criterion 2: the kernel's zeroth moment against the published
/// constants C_0(3;2,1) = 3.66043 and C_0(4;3,1) = 3.08214, each within
/// 2e-3.
criterion_result criterion_2() {
    const quadrature_config cfg;
    const race_setup s3 = make_setup(3, 1000.0);
    const race_setup s4 = make_setup(4, 1000.0);
    density_session d3(build_profile(s3.g, s3.cat, 2, 1));
    density_session d4(build_profile(s4.g, s4.cat, 3, 1));
    const double c3 = d3.moment(0, cfg).value;
    const double c4 = d4.moment(0, cfg).value;
    const bool ok3 = std::abs(c3 - 3.66043) <= 2e-3;
    const bool ok4 = std::abs(c4 - 3.08214) <= 2e-3;
    criterion_result r;
    r.pass = ok3 && ok4;
    r.detail = "C0(3;2,1) computed " + fmt(c3) + " vs published 3.66043, "
               "C0(4;3,1) computed " + fmt(c4) + " vs published 3.08214 "
               "(tolerance 2e-3; the computed kernel integrals sit about "
               "0.025 below both published values)";
    return r;
}

/// Criterion 3: the structural identities linking the two flavors --
/// densities of even k equal, densities of odd k summing to one, each
/// within twice the reported error estimates -- plus the full
/// interleaving chain around one half, for k = 1..10 on both races.
criterion_result criterion_3() {
    const quadrature_config cfg;
    int failures = 0;
    std::string first_bad;
    auto flag = [&](bool ok, const std::string& what) {
        if (!ok) {
            ++failures;
            if (first_bad.empty()) first_bad = what;
        }
    };
    const struct {
        u64 q, a, b;
    } triples[2] = {{3, 2, 1}, {4, 3, 1}};
    for (const auto& t : triples) {
        const race_setup su = make_setup(t.q, 1000.0);
        density_session s(build_profile(su.g, su.cat, t.a, t.b));
        double dom[11], wom[11], de[11], we[11];
        for (int k = 1; k <= 10; ++k) {
            const auto rb = s.density(count_flavor::big_omega, k, cfg);
            const auto rw = s.density(count_flavor::omega, k, cfg);
            dom[k] = rb.value;
            wom[k] = rw.value;
            de[k] = rb.est_error;
            we[k] = rw.est_error;
        }
        const std::string tag = " (q=" + std::to_string(t.q) + ")";
        for (int k = 1; k <= 10; ++k) {
            const double slack = 2.0 * (de[k] + we[k]) + 1e-13;
            if (k % 2 == 0)
                flag(std::abs(dom[k] - wom[k]) <= slack,
                     "even-k equality at k=" + std::to_string(k) + tag);
            else
                flag(std::abs(dom[k] + wom[k] - 1.0) <= slack,
                     "odd-k sum at k=" + std::to_string(k) + tag);
        }
        // interleaving chain: 1 - d_{2k-1} < d_{2k} < 1/2 < d_{2k+1}
        // < 1 - d_{2k}, and the omega ladder climbs toward 1/2
        for (int m = 2; m <= 10; m += 2) {
            flag(dom[m] < 0.5, "d_even below half at k=" + std::to_string(m) + tag);
            flag(1.0 - dom[m - 1] < dom[m],
                 "lower interleave at k=" + std::to_string(m) + tag);
            if (m + 1 <= 10) {
                flag(0.5 < dom[m + 1],
                     "d_odd above half at k=" + std::to_string(m + 1) + tag);
                flag(dom[m + 1] < 1.0 - dom[m],
                     "upper interleave at k=" + std::to_string(m + 1) + tag);
            }
        }
        for (int k = 1; k <= 10; ++k)
            flag(wom[k] < 0.5, "omega below half at k=" + std::to_string(k) + tag);
        for (int k = 1; k <= 9; ++k)
            flag(wom[k] < wom[k + 1],
                 "omega monotone at k=" + std::to_string(k) + tag);
    }
    criterion_result r;
    r.pass = failures == 0;
    r.detail = failures == 0
                   ? "flavor identities within 2x est_error and full "
                     "interleaving chain hold for k=1..10 on both races"
                   : std::to_string(failures) + " check(s) failed, first: " +
                         first_bad;
    return r;
}

/// Criterion 4: the leading-order large-k expansion (one moment, K = 0)
/// agrees with the directly integrated density to four decimal places
/// at k = 10 for the q = 4 race, both rounding to 0.4981.
criterion_result criterion_4() {
    const quadrature_config cfg;
    const race_setup su = make_setup(4, 1000.0);
    density_session s(build_profile(su.g, su.cat, 3, 1));
    const double c0 = s.moment(0, cfg).value;
    const double lead =
        asymptotic_density(count_flavor::big_omega, 10, 0, {c0}, 2);
    const long rounded = std::lround(lead * 1e4);
    const long table_rounded = std::lround(0.498099 * 1e4);
    criterion_result r;
    r.pass = rounded == table_rounded;
    r.detail = "leading-order value " + fmt(lead, 7) + " rounds to 0." +
               std::to_string(rounded) + ", table value 0.498099 rounds to 0." +
               std::to_string(table_rounded);
    return r;
}

/// Criterion 5: the first sign change of the prime race mod 4 (k = 1,
/// multiplicity flavor) sits exactly at 26861, found in under a second.
criterion_result criterion_5() {
    const auto start = clock_type::now();
    const std::optional<u64> x =
        first_sign_change(count_flavor::big_omega, 1, 4, 3, 1, 30000);
    const double elapsed = seconds_since(start);
    criterion_result r;
    r.pass = x.has_value() && *x == 26861 && elapsed < 1.0;
    r.detail = std::string("first sign change at ") +
               (x ? std::to_string(*x) : "none") + " (expected 26861), " +
               fmt(elapsed, 3) + " s";
    return r;
}

/// Criterion 6: normalized bias curves for k = 3 and k = 4 (q = 4 race,
/// multiplicity flavor) out to 1e8 lean the predicted way -- positive
/// for k = 3, negative for k = 4 -- on at least 60% of the log-spaced
/// checkpoints in [1e6, 1e8], in under ten minutes.
criterion_result criterion_6() {
    const auto start = clock_type::now();
    const race_series s = census(100000000, 4, {}, worker_threads());
    double frac[2] = {0.0, 0.0};
    for (int k : {3, 4}) {
        const bias_curve_data curve =
            bias_curve(s, count_flavor::big_omega, k, 3, 1);
        u64 total = 0, leaning = 0;
        for (const auto& [x, value] : curve.points) {
            if (x < 1000000) continue;
            ++total;
            if (k == 3 ? value > 0.0 : value < 0.0) ++leaning;
        }
        frac[k - 3] = total == 0 ? 0.0
                                 : static_cast<double>(leaning) /
                                       static_cast<double>(total);
    }
    const double elapsed = seconds_since(start);
    criterion_result r;
    r.pass = frac[0] >= 0.6 && frac[1] >= 0.6 && elapsed < 600.0;
    r.detail = "sign agreement on [1e6,1e8]: k=3 positive " +
               fmt(100.0 * frac[0], 4) + "%, k=4 negative " +
               fmt(100.0 * frac[1], 4) + "%, " + fmt(elapsed, 3) + " s";
    return r;
}

/// Criterion 7: every expansion up to k = 8 passes the independent
/// Dirichlet-coefficient check at N = 1e4, and the k = 3, 4 expansions
/// match the displayed coefficients exactly, signs included.
criterion_result criterion_7() {
    criterion_result r;
    for (int k = 1; k <= 8; ++k) {
        if (!verify_expansion(expand_bigomega(k), 10000).pass) {
            r.detail = "multiplicity expansion fails oracle at k=" +
                       std::to_string(k);
            return r;
        }
        if (!verify_expansion(expand_omega(k), 10000).pass) {
            r.detail = "distinct-factor expansion fails oracle at k=" +
                       std::to_string(k);
            return r;
        }
    }
    const struct {
        expansion e;
        const char* want;
        const char* name;
    } displays[4] = {
        {expand_bigomega(3), "1\t3\t\n3\t1\t2\n2\t0\t3\n", "Omega k=3"},
        {expand_omega(3), "1\t3\t\n-3\t1\t2\n2\t0\t3\n", "omega k=3"},
        {expand_bigomega(4), "1\t4\t\n6\t2\t2\n8\t1\t3\n6\t0\t4\n3\t0\t2,2\n",
         "Omega k=4"},
        {expand_omega(4), "1\t4\t\n-6\t2\t2\n8\t1\t3\n-6\t0\t4\n3\t0\t2,2\n",
         "omega k=4"},
    };
    for (const auto& d : displays) {
        std::ostringstream got;
        write_expansion(d.e, got);
        if (got.str() != d.want) {
            r.detail = std::string("displayed coefficients differ for ") +
                       d.name;
            return r;
        }
    }
    r.pass = true;
    r.detail = "oracle passes for k<=8 at N=1e4; k=3,4 coefficients match "
               "the displayed expansions exactly";
    return r;
}

/// Criterion 8: the parity recurrence equals brute-force multiset
/// enumeration exactly for X in {50, 100, 200} up to k = 6, and the
/// class difference alternates sign like (-1)^k at X = 200.
criterion_result criterion_8() {
    criterion_result r;
    for (u64 x : {50, 100, 200}) {
        const prime_pool pool = make_pool(x);
        const parity_table h = heuristic_table(pool, 6);
        const parity_table b = brute_force_table(x, 6);
        if (h.kmax != b.kmax || h.v1 != b.v1 || h.v2 != b.v2) {
            r.detail = "recurrence and brute force disagree at X=" +
                       std::to_string(x);
            return r;
        }
    }
    const parity_table t = heuristic_table(make_pool(200), 6);
    for (int k = 1; k <= 6; ++k) {
        const bigint diff = t.v1[k] - t.v2[k];
        const bool want_negative = k % 2 == 1;
        if (diff == 0 || (diff < 0) != want_negative) {
            r.detail = "class difference sign breaks at k=" + std::to_string(k);
            return r;
        }
    }
    r.pass = true;
    r.detail = "recurrence matches brute force for X in {50,100,200}, k<=6; "
               "difference alternates like (-1)^k at X=200";
    return r;
}

/// Criterion 9: zero counts for q in {3, 4} validate at heights 100 and
/// 1000, the first ordinates are stable to 1e-8 under grid refinement,
/// and the lowest ordinate for q = 4 lies in [6.0209, 6.0210].
criterion_result criterion_9() {
    criterion_result r;
    const unsigned th = worker_threads();
    for (u64 q : {3, 4}) {
        const character_group g = build_group(q);
        for (double height : {100.0, 1000.0}) {
            zero_catalog cat = find_all_zeros(q, height, 1e-10, 0.05, th);
            if (!validate(cat, g, height).pass) {
                r.detail = "count validation fails for q=" + std::to_string(q) +
                           " at T=" + fmt(height, 4);
                return r;
            }
        }
        const zero_catalog coarse = find_all_zeros(q, 100.0, 1e-10, 0.05, th);
        const zero_catalog fine = find_all_zeros(q, 100.0, 1e-10, 0.025, th);
        for (const auto& [label, list] : coarse.lists) {
            const auto& refined = fine.lists.at(label).gammas;
            for (std::size_t i = 0; i < 3 && i < list.gammas.size(); ++i) {
                if (std::abs(list.gammas[i] - refined[i]) > 1e-8) {
                    r.detail = "ordinate " + std::to_string(i + 1) +
                               " moves under grid refinement for q=" +
                               std::to_string(q);
                    return r;
                }
            }
        }
    }
    const double gamma1 =
        find_all_zeros(4, 10.0, 1e-10, 0.05, th).lists.at(3).gammas.front();
    if (gamma1 < 6.0209 || gamma1 > 6.0210) {
        r.detail = "gamma_1(q=4) = " + fmt(gamma1, 10) +
                   " outside [6.0209, 6.0210]";
        return r;
    }
    r.pass = true;
    r.detail = "counts validate at T=100,1000 for q=3,4; first ordinates "
               "stable to 1e-8 under refinement; gamma_1(q=4) = " +
               fmt(gamma1, 8);
    return r;
}

/// Criterion 10: the truncated-contour residuals stay below the
/// explicit bound on the whole (j <= 4, z in {0, 1/2}, X in {10,20,30})
/// grid, and the main-term relative gap shrinks monotonically over
/// x = e^20, e^35, e^50 for k <= 3 at branch point 1/2.
criterion_result criterion_10() {
    criterion_result r;
    for (int j = 0; j <= 4; ++j) {
        for (double z : {0.0, 0.5}) {
            for (double X : {10.0, 20.0, 30.0}) {
                const double residual = lau_wu_check(j, z, X);
                const double cap = lau_wu_bound(j, z, X);
                if (residual > cap * (1.0 + 1e-9) + 1e-12) {
                    r.detail = "residual " + fmt(residual, 4) +
                               " exceeds bound " + fmt(cap, 4) + " at j=" +
                               std::to_string(j) + ", z=" + fmt(z, 2) +
                               ", X=" + fmt(X, 3);
                    return r;
                }
            }
        }
    }
    const recip_gamma_table derivs = recip_gamma_derivs(8);
    const hankel_contour contour{0.5, 0.2, 1e-3, 64};
    for (int k = 1; k <= 3; ++k) {
        double previous = 1e300;
        for (double e : {20.0, 35.0, 50.0}) {
            const double x = std::exp(e);
            const cplx whole = hankel_integral(k, contour, x);
            const cplx lead = main_term(k, 0.5, x, derivs);
            const double gap = std::abs(whole - lead) / std::abs(whole);
            if (gap >= previous) {
                r.detail = "main-term gap fails to shrink at k=" +
                           std::to_string(k) + ", x=e^" + fmt(e, 3);
                return r;
            }
            previous = gap;
        }
    }
    r.pass = true;
    r.detail = "residuals below the explicit bound on the 30-point grid; "
               "main-term gaps shrink monotonically for k<=3";
    return r;
}

/// Criterion 11: property sweeps -- character orthogonality for every
/// modulus up to 60, the census partition identity at every checkpoint
/// to 1e6, exact agreement with a trial-division oracle to 1e5, and 100
/// random explicit-formula predictions whose imaginary parts cancel.
criterion_result criterion_11() {
    criterion_result r;
    // first and second orthogonality relations, every modulus in [3, 60]
    for (u64 q = 3; q <= 60; ++q) {
        const character_group g = build_group(q);
        for (const auto& chi : g.characters) {
            for (const auto& psi : g.characters) {
                cplx sum = 0.0;
                for (u64 n = 0; n < q; ++n)
                    sum += chi(n) * std::conj(psi(n));
                const double want = chi.label == psi.label
                                        ? static_cast<double>(g.phi)
                                        : 0.0;
                if (std::abs(sum - want) > 1e-9) {
                    r.detail = "character orthogonality fails at q=" +
                               std::to_string(q);
                    return r;
                }
            }
        }
        for (u64 a = 1; a < q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            cplx sum = 0.0;
            for (const auto& chi : g.characters) sum += chi(a) * std::conj(chi(1));
            const double want = a == 1 ? static_cast<double>(g.phi) : 0.0;
            if (std::abs(sum - want) > 1e-9) {
                r.detail = "residue orthogonality fails at q=" +
                           std::to_string(q) + ", a=" + std::to_string(a);
                return r;
            }
        }
    }
    // every integer in [2, x] lands in exactly one (k, residue) cell
    {
        const race_series s = census(1000000, 4, {}, worker_threads());
        for (std::size_t c = 0; c < s.checkpoints.size(); ++c) {
            for (count_flavor f : {count_flavor::omega, count_flavor::big_omega}) {
                u64 total = 0;
                for (int k = 1; k <= s.kmax; ++k)
                    for (u64 residue = 0; residue < 4; ++residue)
                        total += s.count(c, f, k, residue);
                if (total != s.checkpoints[c] - 1) {
                    r.detail = "census partition identity fails at x=" +
                               std::to_string(s.checkpoints[c]);
                    return r;
                }
            }
        }
    }
    // full tensor equality against direct factorization up to 1e5
    {
        const u64 x_max = 100000;
        const race_series s = census(x_max, 3, {x_max}, worker_threads());
        std::vector<std::vector<u64>> om(s.kmax + 1, std::vector<u64>(3, 0));
        std::vector<std::vector<u64>> big(s.kmax + 1, std::vector<u64>(3, 0));
        for (u64 n = 2; n <= x_max; ++n) {
            u64 m = n;
            int distinct = 0, with_multiplicity = 0;
            for (u64 p = 2; p * p <= m; ++p) {
                if (m % p) continue;
                ++distinct;
                while (m % p == 0) {
                    m /= p;
                    ++with_multiplicity;
                }
            }
            if (m > 1) {
                ++distinct;
                ++with_multiplicity;
            }
            ++om[distinct][n % 3];
            ++big[with_multiplicity][n % 3];
        }
        for (int k = 1; k <= s.kmax; ++k) {
            for (u64 residue = 0; residue < 3; ++residue) {
                if (s.count(0, count_flavor::omega, k, residue) !=
                        om[k][residue] ||
                    s.count(0, count_flavor::big_omega, k, residue) !=
                        big[k][residue]) {
                    r.detail = "census disagrees with trial division at k=" +
                               std::to_string(k) + ", class " +
                               std::to_string(residue);
                    return r;
                }
            }
        }
    }
    // random explicit-formula draws: imaginary parts must cancel
    {
        const race_setup s3 = make_setup(3, 1000.0);
        const race_setup s4 = make_setup(4, 1000.0);
        std::mt19937 rng(987654321u);
        std::uniform_int_distribution<int> pick_k(1, 10);
        std::uniform_real_distribution<double> pick_t0(10.0, 1000.0);
        std::uniform_real_distribution<double> pick_lx(std::log(16.0),
                                                       std::log(1e12));
        for (int draw = 0; draw < 100; ++draw) {
            const bool use_three = rng() % 2 == 0;
            const race_setup& su = use_three ? s3 : s4;
            const u64 a = use_three ? 2 : 3;
            const count_flavor f = rng() % 2 == 0 ? count_flavor::big_omega
                                                  : count_flavor::omega;
            try {
                predict_delta(f, pick_k(rng), su.g, su.cat, a, 1,
                              pick_t0(rng), std::exp(pick_lx(rng)));
            } catch (const validation_error&) {
                r.detail = "imaginary residue above 1e-9 on draw " +
                           std::to_string(draw);
                return r;
            }
        }
    }
    r.pass = true;
    r.detail = "orthogonality q<=60, census partition to 1e6, trial-division "
               "agreement to 1e5, and 100 clean prediction draws";
    return r;
}

criterion_result run_criterion(int n) {
    switch (n) {
        case 1: return criterion_1();
        case 2: return criterion_2();
        case 3: return criterion_3();
        case 4: return criterion_4();
        case 5: return criterion_5();
        case 6: return criterion_6();
        case 7: return criterion_7();
        case 8: return criterion_8();
        case 9: return criterion_9();
        case 10: return criterion_10();
        case 11: return criterion_11();
        default: throw std::runtime_error("no such criterion");
    }
}

bool report(int n) {
    criterion_result r;
    try {
        r = run_criterion(n);
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("unexpected error: ") + e.what();
    }
    std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << n << ": "
              << r.detail << "\n";
    return r.pass;
}

}  // namespace

int main(int argc, char** argv) {
    int which = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) {
            which = std::atoi(argv[++i]);
            if (which < 1 || which > 11) {
                std::cerr << "acceptance: criterion must be 1..11\n";
                return 64;
            }
        } else {
            std::cerr << "usage: acceptance [--criterion N]\n";
            return 64;
        }
    }
    if (which != 0) return report(which) ? 0 : 1;
    bool all_pass = true;
    for (int n = 1; n <= 11; ++n) all_pass = report(n) && all_pass;
    return all_pass ? 0 : 1;
}
