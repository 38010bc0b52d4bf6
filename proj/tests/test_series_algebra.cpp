#include <doctest.h>

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "kprime/errors.hpp"
#include "kprime/series_algebra.hpp"

using namespace kprime;

namespace {

bigint factorial(int n) {
    bigint f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

void gen_partitions(int remaining, int max_part, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
    if (remaining == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
        cur.push_back(p);
        gen_partitions(remaining - p, p, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> partitions_of(int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    gen_partitions(k, k, cur, out);
    return out;
}

// independent closed form: the term indexed by a partition with m ones
// and larger parts n_j carries k! / (m! prod n_j prod mult_j!), where
// mult_j counts repeats of each distinct larger part; the distinct-factor
// flavor multiplies in (-1)^(n_j - 1) per larger part.
bigint closed_form(int k, const std::vector<int>& desc_parts,
                   count_flavor flavor) {
    int m = 0, sign_exp = 0;
    bigint den = 1;
    int run = 0, prev = 0;
    for (int p : desc_parts) {
        if (p == 1) {
            ++m;
            continue;
        }
        den *= p;
        sign_exp += p - 1;
        run = (p == prev) ? run + 1 : 1;
        den *= run;  // accumulates mult_j! one factor at a time
        prev = p;
    }
    den *= factorial(m);
    const bigint num = factorial(k);
    REQUIRE(num % den == 0);
    bigint c = num / den;
    if (flavor == count_flavor::omega && sign_exp % 2 == 1) c = -c;
    return c;
}

partition_term term_of(const std::vector<int>& desc_parts) {
    partition_term t;
    for (int p : desc_parts)
        if (p == 1)
            ++t.base_power;
        else
            t.parts.push_back(p);
    std::sort(t.parts.begin(), t.parts.end());
    return t;
}

}  // namespace

TEST_CASE("every coefficient matches the closed form, k <= 12") {
    for (int k = 1; k <= 12; ++k) {
        const auto parts = partitions_of(k);
        for (count_flavor f : {count_flavor::big_omega, count_flavor::omega}) {
            const expansion e =
                f == count_flavor::big_omega ? expand_bigomega(k)
                                             : expand_omega(k);
            CHECK(e.k == k);
            CHECK(e.flavor == f);
            REQUIRE(e.terms.size() == parts.size());
            for (const auto& p : parts) {
                const auto it = e.terms.find(term_of(p));
                REQUIRE(it != e.terms.end());
                CHECK(it->second == closed_form(k, p, f));
            }
        }
    }
}

TEST_CASE("coefficient sums count permutations") {
    for (int k = 2; k <= 12; ++k) {
        bigint plus = 0, signed_sum = 0;
        for (const auto& [t, c] : expand_bigomega(k).terms) plus += c;
        for (const auto& [t, c] : expand_omega(k).terms) signed_sum += c;
        // formally setting every factor to 1 sums k!/z_lambda over
        // partitions: the class equation of the symmetric group
        CHECK(plus == factorial(k));
        // with alternating part signs the sum telescopes to [z^k](1 + z)
        CHECK(signed_sum == 0);
    }
}

TEST_CASE("pure power leads with coefficient one") {
    for (int k : {1, 2, 5, 9, 30}) {
        for (const expansion& e : {expand_bigomega(k), expand_omega(k)}) {
            const auto& [t, c] = *e.terms.begin();
            CHECK(t.base_power == k);
            CHECK(t.parts.empty());
            CHECK(c == 1);
        }
        for (const auto& [t, c] : expand_bigomega(k).terms) CHECK(c > 0);
    }
}

TEST_CASE("canonical text layout") {
    std::ostringstream big;
    write_expansion(expand_bigomega(4), big);
    CHECK(big.str() ==
          "1\t4\t\n"
          "6\t2\t2\n"
          "8\t1\t3\n"
          "6\t0\t4\n"
          "3\t0\t2,2\n");

    std::ostringstream small;
    write_expansion(expand_omega(3), small);
    CHECK(small.str() ==
          "1\t3\t\n"
          "-3\t1\t2\n"
          "2\t0\t3\n");
}

TEST_CASE("recurrence consistency through the public interface") {
    // k E_k = sum_n [k!/(k-n)!] E_{k-n} T_n with T_1 the base factor and
    // T_n a part of size n; rebuild level 5 from levels 0..4 and compare
    const int k = 5;
    for (count_flavor f : {count_flavor::big_omega, count_flavor::omega}) {
        auto level = [&](int j) {
            return f == count_flavor::big_omega ? expand_bigomega(j)
                                                : expand_omega(j);
        };
        std::map<partition_term, bigint, term_order> acc;
        for (int n = 1; n <= k; ++n) {
            bigint scale = 1;
            for (int i = k - n + 1; i <= k - 1; ++i) scale *= i;
            if (f == count_flavor::omega && n % 2 == 0) scale = -scale;
            auto absorb = [&](const partition_term& t, const bigint& c) {
                partition_term u = t;
                if (n == 1) {
                    ++u.base_power;
                } else {
                    u.parts.insert(
                        std::lower_bound(u.parts.begin(), u.parts.end(), n), n);
                }
                acc[u] += scale * c;
            };
            if (n == k)
                absorb(partition_term{}, 1);
            else
                for (const auto& [t, c] : level(k - n).terms) absorb(t, c);
        }
        const expansion direct = level(k);
        REQUIRE(acc.size() == direct.terms.size());
        for (const auto& [t, c] : acc) {
            const auto it = direct.terms.find(t);
            REQUIRE(it != direct.terms.end());
            CHECK(it->second == c);
        }
    }
}

TEST_CASE("numeric verification against the convolution oracle") {
    for (int k = 1; k <= 8; ++k) {
        const auto big = verify_expansion(expand_bigomega(k), 10000);
        CHECK(big.pass);
        CHECK(big.first_mismatch == 0);
        const auto small = verify_expansion(expand_omega(k), 10000);
        CHECK(small.pass);
        CHECK(small.first_mismatch == 0);
    }
}

TEST_CASE("verification pinpoints a corrupted coefficient") {
    expansion e = expand_bigomega(3);
    const auto it = e.terms.find(partition_term{1, {2}});
    REQUIRE(it != e.terms.end());
    it->second += 1;
    const auto r = verify_expansion(e, 1000);
    CHECK_FALSE(r.pass);
    // the corrupted term first touches 8 = 2 * 2^2
    CHECK(r.first_mismatch == 8);

    expansion missing = expand_omega(2);
    missing.terms.erase(partition_term{2, {}});
    const auto m = verify_expansion(missing, 1000);
    CHECK_FALSE(m.pass);
    CHECK(m.first_mismatch == 4);
}

TEST_CASE("order and oracle limits are enforced") {
    CHECK_THROWS_AS(expand_bigomega(0), domain_error);
    CHECK_THROWS_AS(expand_bigomega(31), domain_error);
    CHECK_THROWS_AS(expand_omega(0), domain_error);
    CHECK_THROWS_AS(expand_omega(31), domain_error);
    const auto e = expand_bigomega(2);
    CHECK_THROWS_AS(verify_expansion(e, 1), domain_error);
    CHECK_THROWS_AS(verify_expansion(e, 200000), domain_error);
}
