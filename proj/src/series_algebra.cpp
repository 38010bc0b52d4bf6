#include "kprime/series_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "kprime/errors.hpp"
#include "kprime/race_census.hpp"

namespace kprime {
namespace {

using term_map = std::map<partition_term, bigint, term_order>;
using i64 = std::int64_t;

/// One Newton-Girard step: E_k = sum_{n=1}^k sign_n (k-1)!/(k-n)! E_{k-n} P_n,
/// where P_1 raises the base power and P_n (n >= 2) appends a part.
term_map combine_step(const std::vector<term_map>& lower, int k,
                      bool alternating) {
    term_map out;
    for (int n = 1; n <= k; ++n) {
        bigint scale = 1;
        for (int i = k - n + 1; i <= k - 1; ++i) scale *= i;
        if (alternating && n % 2 == 0) scale = -scale;
        for (const auto& [term, coeff] : lower[static_cast<std::size_t>(k - n)]) {
            partition_term next = term;
            if (n == 1) {
                next.base_power += 1;
            } else {
                next.parts.insert(
                    std::upper_bound(next.parts.begin(), next.parts.end(), n),
                    n);
            }
            out[next] += scale * coeff;
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

expansion expand(int k, count_flavor flavor) {
    if (k < 1 || k > 30)
        throw domain_error("expansion order must satisfy 1 <= k <= 30");
    std::vector<term_map> levels(static_cast<std::size_t>(k) + 1);
    levels[0][partition_term{}] = 1;  // E_0 = 1
    for (int j = 1; j <= k; ++j)
        levels[static_cast<std::size_t>(j)] =
            combine_step(levels, j, flavor == count_flavor::omega);
    expansion e;
    e.k = k;
    e.flavor = flavor;
    e.terms = std::move(levels[static_cast<std::size_t>(k)]);
    return e;
}

i64 binomial_i64(int n, int r) {
    if (r < 0 || r > n) return 0;
    i64 v = 1;
    for (int i = 1; i <= r; ++i) v = v * (n - r + i) / i;
    return v;
}

/// Dirichlet convolution r[nm] += a[n] b[m], truncated at n_limit.
std::vector<i64> dirichlet_mul(const std::vector<i64>& a,
                               const std::vector<i64>& b, u64 n_limit) {
    std::vector<i64> r(n_limit + 1, 0);
    for (u64 n = 1; n <= n_limit; ++n) {
        if (a[n] == 0) continue;
        const u64 m_max = n_limit / n;
        for (u64 m = 1; m <= m_max; ++m)
            if (b[m] != 0) r[n * m] += a[n] * b[m];
    }
    return r;
}

}  // namespace

expansion expand_bigomega(int k) { return expand(k, count_flavor::big_omega); }

expansion expand_omega(int k) { return expand(k, count_flavor::omega); }

verify_report verify_expansion(const expansion& e, u64 n_limit) {
    if (n_limit < 2 || n_limit > 100'000)
        throw domain_error("oracle comparison supports 2 <= N <= 1e5");

    const std::vector<u64> primes = primes_up_to(n_limit);
    const bool distinct = e.flavor == count_flavor::omega;

    // base series: F has coefficient 1 at primes; Ftilde at all prime powers
    std::vector<i64> base(n_limit + 1, 0);
    for (u64 p : primes)
        for (u64 pj = p; pj <= n_limit; pj *= p) {
            base[pj] = 1;
            if (!distinct) break;
            if (pj > n_limit / p) break;
        }

    // part series of size u: F(us) has 1 at p^u; Ftilde(s;u) has
    // C(j-1, u-1) at p^j
    auto part_series = [&](int u) {
        std::vector<i64> s(n_limit + 1, 0);
        for (u64 p : primes) {
            u64 pj = 1;
            int j = 0;
            while (pj <= n_limit / p) {
                pj *= p;
                ++j;
                if (distinct)
                    s[pj] = binomial_i64(j - 1, u - 1);
                else if (j == u)
                    s[pj] = 1;
            }
        }
        return s;
    };

    std::vector<bigint> total(n_limit + 1, 0);
    for (const auto& [term, coeff] : e.terms) {
        std::vector<i64> series(n_limit + 1, 0);
        series[1] = 1;
        for (int i = 0; i < term.base_power; ++i)
            series = dirichlet_mul(series, base, n_limit);
        for (int part : term.parts)
            series = dirichlet_mul(series, part_series(part), n_limit);
        for (u64 n = 1; n <= n_limit; ++n)
            if (series[n] != 0) total[n] += coeff * series[n];
    }

    const factor_count_slice slice =
        sieve_segment(2, n_limit + 1, primes_up_to(1 + static_cast<u64>(
                                          std::sqrt(double(n_limit)))));
    bigint k_factorial = 1;
    for (int i = 2; i <= e.k; ++i) k_factorial *= i;

    verify_report report;
    for (u64 n = 1; n <= n_limit; ++n) {
        const int f_n =
            n == 1 ? 0
                   : (distinct ? slice.omega[n - 2] : slice.bigomega[n - 2]);
        const bigint expected = f_n == e.k ? k_factorial : bigint(0);
        if (total[n] != expected) {
            report.pass = false;
            report.first_mismatch = n;
            return report;
        }
    }
    return report;
}

void write_expansion(const expansion& e, std::ostream& out) {
    for (const auto& [term, coeff] : e.terms) {
        out << coeff << '\t' << term.base_power << '\t';
        for (std::size_t i = 0; i < term.parts.size(); ++i) {
            if (i > 0) out << ',';
            out << term.parts[i];
        }
        out << '\n';
    }
}

}  // namespace kprime
