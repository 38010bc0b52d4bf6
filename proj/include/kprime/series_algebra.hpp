#pragma once
// Exact partition-indexed expansions of k! F_{Omega_k} and k! F_{omega_k}.
//
// Write F(s) for the prime sum and F(ns) for its n-th power-sum analog
// (for the distinct-factor flavor, Ftilde and its u-weighted variants).
// The generating identities are Newton-Girard recurrences:
//   k F_{Omega_k} = sum_{n=1}^k F_{Omega_{k-n}} F(ns),
//   k F_{omega_k} = sum_{n=1}^k (-1)^{n-1} F_{omega_{k-n}} Ftilde(s; n),
// so E_k := k! F_{Omega_k} satisfies
//   E_k = sum_n [(k-1)!/(k-n)!] E_{k-n} F(ns)
// with integer scaling throughout; running it symbolically yields an
// integer-coefficient combination of terms F^m prod_j F(n_j s) indexed
// by m plus a partition of k - m into parts >= 2.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kprime/flavor.hpp"

namespace kprime {

using u64 = std::uint64_t;
using bigint = boost::multiprecision::cpp_int;

/// One product term F^m * prod_j F(n_j s): the base power m plus the
/// multiset of part sizes n_j >= 2; base_power + sum(parts) = k.
struct partition_term {
    int base_power = 0;
    std::vector<int> parts;  // ascending, each >= 2
};

/// Canonical emission order: base power descending, then parts
/// lexicographically descending, matching the order the expansions are
/// conventionally displayed in (pure power first, deepest part last).
struct term_order {
    bool operator()(const partition_term& u, const partition_term& v) const {
        if (u.base_power != v.base_power) return u.base_power > v.base_power;
        return u.parts > v.parts;
    }
};

/// Exact expansion of k! F_{f_k} over partition terms.
struct expansion {
    int k = 0;
    count_flavor flavor = count_flavor::big_omega;
    std::map<partition_term, bigint, term_order> terms;
};

/// Expansion of k! F_{Omega_k}; coefficients are positive integers and
/// the pure term F^k always has coefficient 1. Requires 1 <= k <= 30.
expansion expand_bigomega(int k);

/// Expansion of k! F_{omega_k} over Ftilde powers and Ftilde(s; n)
/// factors; coefficients are signed integers, pure term coefficient 1.
/// Requires 1 <= k <= 30.
expansion expand_omega(int k);

struct verify_report {
    bool pass = true;
    u64 first_mismatch = 0;  // smallest n whose coefficient disagrees; 0 if pass
};

/// Check an expansion against an independent Dirichlet-coefficient
/// oracle up to index n_limit <= 1e5: specialize the character to 1 on
/// every prime, expand each term by exact integer Dirichlet
/// convolution, and compare the total against k! [f(n) = k]. For the
/// omega flavor, Ftilde(s; u) has coefficient C(j-1, u-1) at p^j.
verify_report verify_expansion(const expansion& e, u64 n_limit);

/// One line per term in canonical order: `coeff<TAB>m<TAB>n1,n2,...`
/// (third field empty for the pure power term).
void write_expansion(const expansion& e, std::ostream& out);

}  // namespace kprime
