#pragma once
// Combinatorial parity model for products of k primes mod 4.
//
// Take the odd primes up to X, split them into S1 (p = 1 mod 4, size
// s1) and S2 (p = 3 mod 4, size s2), and let V_1^(k), V_2^(k) be the
// multisets of k-element prime products landing in class 1 resp. 3
// mod 4 (the class is decided by the parity of the S2 multiplicity).
// Newton's identity for complete homogeneous symmetric functions,
// specialized to track that parity, gives the exact recurrence
//   k v1[k] = sum_{j=1}^{k} [ j odd:  s1 v1[k-j] + s2 v2[k-j]
//                             j even: (s1+s2) v1[k-j] ]
// (v2 analogously with the roles of v1/v2 swapped in the odd-j terms),
// whose division by k is exact. The model reproduces the alternating
// bias: class 3 leads for odd k, class 1 for even k.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace kprime {

using u64 = std::uint64_t;
using bigint = boost::multiprecision::cpp_int;

/// Sizes of the two odd-prime classes up to x_max (prime 2 excluded:
/// its products are 0 or 2 mod 4, outside both classes).
struct prime_pool {
    u64 x_max = 0;
    u64 s1 = 0;  // primes = 1 mod 4
    u64 s2 = 0;  // primes = 3 mod 4
};

/// Exact class counts per k: v1[k] = |V_1^(k)|, v2[k] = |V_2^(k)|.
struct parity_table {
    int kmax = 0;
    std::vector<bigint> v1;  // index 0..kmax, v1[0] = 1
    std::vector<bigint> v2;  // index 0..kmax, v2[0] = 0
};

/// Classify the odd primes <= x_max.
prime_pool make_pool(u64 x_max);

/// Run the parity recurrence up to kmax <= 40 with exact integers; a
/// non-integral division by k signals a recurrence bug (logic error).
parity_table heuristic_table(const prime_pool& pool, int kmax);

/// Independent oracle: enumerate every k-multiset of the odd primes
/// <= x_max (k <= kmax) and classify its product mod 4 directly.
/// Refuses pools where C(s1+s2+kmax-1, kmax) exceeds 1e8 multisets.
parity_table brute_force_table(u64 x_max, int kmax);

/// CSV `k,v1,v2,diff_sign` with diff_sign = sign(v1[k] - v2[k]).
void write_parity_csv(const parity_table& table, std::ostream& out);

}  // namespace kprime
