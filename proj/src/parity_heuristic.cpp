#include "kprime/parity_heuristic.hpp"

#include <ostream>
#include <stdexcept>

#include "kprime/errors.hpp"
#include "kprime/race_census.hpp"

namespace kprime {
namespace {

bigint multiset_budget(u64 s, int kmax) {
    // C(s + kmax - 1, kmax), the number of kmax-multisets
    bigint v = 1;
    for (int i = 1; i <= kmax; ++i) {
        v *= static_cast<long long>(s) + kmax - i;
        v /= i;
    }
    return v;
}

}  // namespace

prime_pool make_pool(u64 x_max) {
    prime_pool pool;
    pool.x_max = x_max;
    for (u64 p : primes_up_to(x_max)) {
        if (p == 2) continue;
        (p % 4 == 1 ? pool.s1 : pool.s2) += 1;
    }
    return pool;
}

parity_table heuristic_table(const prime_pool& pool, int kmax) {
    if (kmax < 0 || kmax > 40)
        throw domain_error("parity table supports 0 <= kmax <= 40");
    parity_table t;
    t.kmax = kmax;
    t.v1.assign(static_cast<std::size_t>(kmax) + 1, 0);
    t.v2.assign(static_cast<std::size_t>(kmax) + 1, 0);
    t.v1[0] = 1;
    const bigint s1 = pool.s1, s2 = pool.s2, both = s1 + s2;
    for (int k = 1; k <= kmax; ++k) {
        bigint n1 = 0, n2 = 0;
        for (int j = 1; j <= k; ++j) {
            const std::size_t i = static_cast<std::size_t>(k - j);
            if (j % 2 == 1) {
                n1 += s1 * t.v1[i] + s2 * t.v2[i];
                n2 += s1 * t.v2[i] + s2 * t.v1[i];
            } else {
                n1 += both * t.v1[i];
                n2 += both * t.v2[i];
            }
        }
        if (n1 % k != 0 || n2 % k != 0)
            throw std::logic_error(
                "parity recurrence produced a non-integral division");
        t.v1[static_cast<std::size_t>(k)] = n1 / k;
        t.v2[static_cast<std::size_t>(k)] = n2 / k;
    }
    return t;
}

parity_table brute_force_table(u64 x_max, int kmax) {
    if (kmax < 0 || kmax > 40)
        throw domain_error("parity table supports 0 <= kmax <= 40");
    std::vector<int> classes;  // 1 when the prime is in S2
    for (u64 p : primes_up_to(x_max))
        if (p != 2) classes.push_back(p % 4 == 3 ? 1 : 0);
    if (multiset_budget(classes.size(), kmax) > 100'000'000)
        throw resource_error("brute-force enumeration exceeds 1e8 multisets");

    parity_table t;
    t.kmax = kmax;
    t.v1.assign(static_cast<std::size_t>(kmax) + 1, 0);
    t.v2.assign(static_cast<std::size_t>(kmax) + 1, 0);
    // walk multisets as nondecreasing index sequences, counting every
    // prefix so all sizes <= kmax are tallied in one pass
    auto walk = [&](auto&& self, std::size_t start, int size,
                    int parity) -> void {
        (parity == 0 ? t.v1 : t.v2)[static_cast<std::size_t>(size)] += 1;
        if (size == kmax) return;
        for (std::size_t i = start; i < classes.size(); ++i)
            self(self, i, size + 1, parity ^ classes[i]);
    };
    walk(walk, 0, 0, 0);
    return t;
}

void write_parity_csv(const parity_table& table, std::ostream& out) {
    out << "k,v1,v2,diff_sign\n";
    for (int k = 0; k <= table.kmax; ++k) {
        const std::size_t i = static_cast<std::size_t>(k);
        const int sign = table.v1[i] == table.v2[i]
                             ? 0
                             : (table.v1[i] > table.v2[i] ? 1 : -1);
        out << k << ',' << table.v1[i] << ',' << table.v2[i] << ',' << sign
            << '\n';
    }
}

}  // namespace kprime
