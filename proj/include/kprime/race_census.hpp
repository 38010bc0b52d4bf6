#pragma once
// Segmented factor-count sieve and prime-race bookkeeping.
//
// A race compares, for n up to X, the counts
//   N_k(x; q, a) = #{ n <= x : Omega(n) = k, n = a mod q }
// (and the omega analog pi_k) between two residue classes. The sieve
// computes omega(n) and Omega(n) exactly for every n in cache-sized
// segments: each prime p <= sqrt(hi) strides the segment once per power,
// incrementing 8-bit counters and a running product of recognized prime
// power parts; wherever that product falls short of n, exactly one prime
// factor larger than sqrt(hi) remains and is credited once.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "kprime/flavor.hpp"

namespace kprime {

using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Exact factor counts for one sieve segment [lo, hi).
struct factor_count_slice {
    u64 lo = 0;
    u64 hi = 0;
    std::vector<std::uint8_t> omega;     // omega[n - lo], distinct primes
    std::vector<std::uint8_t> bigomega;  // bigomega[n - lo], with multiplicity
};

/// Cumulative race counts at a ladder of checkpoints.
///
/// counts is a dense tensor over (checkpoint, flavor, k, residue class);
/// non-coprime residue classes are retained so partition identities can
/// be checked, but race queries require coprime classes.
struct race_series {
    u64 q = 0;
    u64 x_max = 0;
    int kmax = 0;                  // largest factor count observed
    std::vector<u64> checkpoints;  // strictly ascending, last <= x_max
    std::vector<u64> counts;       // [((c*2 + f)*(kmax+1) + k)*q + r]

    /// #{ n <= checkpoints[checkpoint_index] : f(n) = k, n = residue mod q }.
    u64 count(std::size_t checkpoint_index, count_flavor f, int k,
              u64 residue) const;
};

/// Normalized race difference, one point per checkpoint:
///   (k-1)! log x * Delta(x) / (sqrt(x) (loglog x)^{k-1}).
struct bias_curve_data {
    count_flavor flavor = count_flavor::big_omega;
    int k = 1;
    u64 a = 0;
    u64 b = 0;
    std::vector<std::pair<u64, double>> points;  // (x, value), x ascending
};

/// All primes <= n by plain sieve of Eratosthenes.
std::vector<u64> primes_up_to(u64 n);

/// Exact omega/Omega for [lo, hi), 2 <= lo < hi. The prime list must
/// contain every prime <= sqrt(hi - 1) (extra entries are ignored);
/// an incomplete or unsorted list raises a domain error.
factor_count_slice sieve_segment(u64 lo, u64 hi, const std::vector<u64>& primes);

/// Log-spaced checkpoint ladder, 200 points per decade from 10 to x_max,
/// deduplicated, always ending exactly at x_max.
std::vector<u64> default_checkpoints(u64 x_max);

/// Full census of factor counts per residue class mod q for n in [2, x_max],
/// x_max <= 1e9. An empty checkpoint list selects default_checkpoints.
/// Supplied checkpoints must be strictly ascending and <= x_max. Segments
/// are sieved on `threads` workers and merged in order, so results are
/// deterministic regardless of thread count.
race_series census(u64 x_max, u64 q, std::vector<u64> checkpoints = {},
                   unsigned threads = 1);

/// Delta_{f_k}(x; q, a, b) at checkpoint x (must be one of the stored
/// checkpoints); a, b must be coprime to q.
i64 delta(const race_series& s, count_flavor f, int k, u64 a, u64 b, u64 x);

/// Smallest x <= x_max where Delta_{f_k}(x; q, a, b) takes the strict
/// opposite sign of its initial persistent sign (the sign of the first
/// nonzero value), scanning every integer; nullopt if no change occurs.
std::optional<u64> first_sign_change(count_flavor f, int k, u64 q, u64 a,
                                     u64 b, u64 x_max);

/// Normalized bias curve at every checkpoint of s; requires all
/// checkpoints >= 3 so loglog x is positive.
bias_curve_data bias_curve(const race_series& s, count_flavor f, int k,
                           u64 a, u64 b);

/// CSV `x,f,k,class,count`, rows ascending x, then k = 1..kmax, then
/// class 0..q-1, then flavor (omega before bigomega).
void write_counts_csv(const race_series& s, std::ostream& out);

/// CSV `x,value` with shortest round-trip value formatting.
void write_curve_csv(const bias_curve_data& curve, std::ostream& out);

}  // namespace kprime
