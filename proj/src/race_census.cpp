#include "kprime/race_census.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <deque>
#include <future>
#include <numeric>
#include <ostream>
#include <string>

#include "kprime/errors.hpp"

namespace kprime {
namespace {

constexpr u64 segment_length = u64{1} << 20;
// k slots 0..30: Omega(n) <= 29 for n <= 1e9 (2^30 > 1e9)
constexpr int k_capacity = 31;
constexpr u64 census_limit = 1'000'000'000;

u64 isqrt_u64(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while (r + 1 <= 0xffffffffull && (r + 1) * (r + 1) <= n) ++r;
    return r;
}

u64 first_multiple_at_least(u64 step, u64 lo) {
    const u64 rem = lo % step;
    return rem == 0 ? lo : lo + (step - rem);
}

factor_count_slice sieve_segment_unchecked(u64 lo, u64 hi,
                                           const std::vector<u64>& primes) {
    const std::size_t len = static_cast<std::size_t>(hi - lo);
    factor_count_slice slice;
    slice.lo = lo;
    slice.hi = hi;
    slice.omega.assign(len, 0);
    slice.bigomega.assign(len, 0);
    std::vector<u64> mult(len, 1);

    std::uint8_t* om = slice.omega.data();
    std::uint8_t* bg = slice.bigomega.data();
    u64* ml = mult.data();
    for (u64 p : primes) {
        if (p * p >= hi) break;
        for (u64 m = first_multiple_at_least(p, lo); m < hi; m += p) {
            const std::size_t i = static_cast<std::size_t>(m - lo);
            ++om[i];
            ++bg[i];
            ml[i] *= p;
        }
        for (u64 pe = p; pe <= (hi - 1) / p;) {
            pe *= p;
            for (u64 m = first_multiple_at_least(pe, lo); m < hi; m += pe) {
                const std::size_t i = static_cast<std::size_t>(m - lo);
                ++bg[i];
                ml[i] *= p;
            }
        }
    }
    // whatever the strided product missed is a single prime > sqrt(hi)
    u64 n = lo;
    for (std::size_t i = 0; i < len; ++i, ++n) {
        if (ml[i] != n) {
            ++om[i];
            ++bg[i];
        }
    }
    return slice;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

const char* flavor_name(count_flavor f) {
    return f == count_flavor::omega ? "omega" : "bigomega";
}

}  // namespace

std::vector<u64> primes_up_to(u64 n) {
    std::vector<u64> primes;
    if (n < 2) return primes;
    std::vector<std::uint8_t> composite(static_cast<std::size_t>(n) + 1, 0);
    for (u64 p = 2; p <= n; ++p) {
        if (composite[static_cast<std::size_t>(p)]) continue;
        primes.push_back(p);
        if (p <= n / p)
            for (u64 m = p * p; m <= n; m += p)
                composite[static_cast<std::size_t>(m)] = 1;
    }
    return primes;
}

factor_count_slice sieve_segment(u64 lo, u64 hi,
                                 const std::vector<u64>& primes) {
    if (lo < 2 || lo >= hi)
        throw domain_error("sieve segment requires 2 <= lo < hi");
    const u64 bound = isqrt_u64(hi - 1);
    const std::vector<u64> expected = primes_up_to(bound);
    std::size_t i = 0;
    for (; i < primes.size() && primes[i] <= bound; ++i) {
        if (i > 0 && primes[i] <= primes[i - 1])
            throw domain_error("prime list must be strictly ascending");
        if (i >= expected.size() || primes[i] != expected[i])
            throw domain_error("prime list incomplete or wrong up to sqrt(hi)");
    }
    if (i < expected.size())
        throw domain_error("prime list incomplete up to sqrt(hi)");
    return sieve_segment_unchecked(lo, hi, primes);
}

std::vector<u64> default_checkpoints(u64 x_max) {
    std::vector<u64> cps;
    if (x_max < 10) {
        cps.push_back(x_max);
        return cps;
    }
    const double decades = std::log10(static_cast<double>(x_max));
    for (long j = 200;; ++j) {
        if (static_cast<double>(j) > 200.0 * decades + 1.0) break;
        const u64 x = static_cast<u64>(
            std::llround(std::pow(10.0, static_cast<double>(j) / 200.0)));
        if (x > x_max) break;
        if (cps.empty() || x > cps.back()) cps.push_back(x);
    }
    if (cps.empty() || cps.back() != x_max) cps.push_back(x_max);
    return cps;
}

u64 race_series::count(std::size_t checkpoint_index, count_flavor f, int k,
                       u64 residue) const {
    if (checkpoint_index >= checkpoints.size())
        throw domain_error("checkpoint index out of range");
    if (k < 0 || k > kmax) return 0;
    const std::size_t fi = f == count_flavor::omega ? 0 : 1;
    const std::size_t idx =
        ((checkpoint_index * 2 + fi) * static_cast<std::size_t>(kmax + 1) +
         static_cast<std::size_t>(k)) *
            static_cast<std::size_t>(q) +
        static_cast<std::size_t>(residue % q);
    return counts[idx];
}

race_series census(u64 x_max, u64 q, std::vector<u64> checkpoints,
                   unsigned threads) {
    if (q < 3) throw domain_error("census requires modulus q >= 3");
    if (x_max < 2 || x_max > census_limit)
        throw domain_error("census requires 2 <= X <= 1e9");
    if (checkpoints.empty()) checkpoints = default_checkpoints(x_max);
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] < 1 || checkpoints[i] > x_max)
            throw domain_error("checkpoints must lie in [1, X]");
        if (i > 0 && checkpoints[i] <= checkpoints[i - 1])
            throw domain_error("checkpoints must be strictly ascending");
    }
    const std::size_t cell_count = 2 * static_cast<std::size_t>(k_capacity) *
                                   static_cast<std::size_t>(q);
    if (checkpoints.size() * cell_count > 250'000'000)
        throw resource_error("census count tensor would exceed memory budget");

    const std::vector<u64> primes = primes_up_to(isqrt_u64(x_max));
    std::vector<u64> cur(cell_count, 0);
    std::vector<std::vector<u64>> snapshots(checkpoints.size());
    std::size_t ci = 0;
    int kmax_seen = 0;

    auto absorb = [&](const factor_count_slice& slice) {
        u64 r = slice.lo % q;
        const std::size_t len = static_cast<std::size_t>(slice.hi - slice.lo);
        for (std::size_t i = 0; i < len; ++i) {
            const u64 n = slice.lo + i;
            while (ci < checkpoints.size() && checkpoints[ci] < n)
                snapshots[ci++] = cur;
            const int om = slice.omega[i];
            const int bg = slice.bigomega[i];
            kmax_seen = std::max(kmax_seen, bg);
            cur[(0 * static_cast<std::size_t>(k_capacity) +
                 static_cast<std::size_t>(om)) *
                    q +
                r] += 1;
            cur[(1 * static_cast<std::size_t>(k_capacity) +
                 static_cast<std::size_t>(bg)) *
                    q +
                r] += 1;
            if (++r == q) r = 0;
        }
    };

    if (threads <= 1) {
        for (u64 lo = 2; lo <= x_max; lo += segment_length)
            absorb(sieve_segment_unchecked(
                lo, std::min(x_max + 1, lo + segment_length), primes));
    } else {
        std::deque<std::future<factor_count_slice>> window;
        u64 next_lo = 2;
        auto spawn = [&]() {
            const u64 lo = next_lo;
            const u64 hi = std::min(x_max + 1, lo + segment_length);
            next_lo = hi;
            window.push_back(std::async(std::launch::async, [lo, hi, &primes] {
                return sieve_segment_unchecked(lo, hi, primes);
            }));
        };
        while (next_lo <= x_max && window.size() < threads) spawn();
        while (!window.empty()) {
            const factor_count_slice slice = window.front().get();
            window.pop_front();
            if (next_lo <= x_max) spawn();
            absorb(slice);
        }
    }
    while (ci < checkpoints.size()) snapshots[ci++] = cur;

    race_series s;
    s.q = q;
    s.x_max = x_max;
    s.kmax = kmax_seen;
    s.checkpoints = std::move(checkpoints);
    const std::size_t rows = static_cast<std::size_t>(s.kmax + 1);
    s.counts.assign(s.checkpoints.size() * 2 * rows * q, 0);
    for (std::size_t c = 0; c < s.checkpoints.size(); ++c)
        for (std::size_t f = 0; f < 2; ++f)
            for (std::size_t k = 0; k < rows; ++k)
                std::memcpy(
                    &s.counts[((c * 2 + f) * rows + k) * q],
                    &snapshots[c][(f * static_cast<std::size_t>(k_capacity) +
                                   k) *
                                  q],
                    static_cast<std::size_t>(q) * sizeof(u64));
    return s;
}

i64 delta(const race_series& s, count_flavor f, int k, u64 a, u64 b, u64 x) {
    if (k < 1) throw domain_error("race difference requires k >= 1");
    if (std::gcd(a % s.q, s.q) != 1 || std::gcd(b % s.q, s.q) != 1)
        throw domain_error("race residues must be coprime to the modulus");
    const auto it =
        std::lower_bound(s.checkpoints.begin(), s.checkpoints.end(), x);
    if (it == s.checkpoints.end() || *it != x)
        throw domain_error("x is not a stored checkpoint");
    const std::size_t c = static_cast<std::size_t>(it - s.checkpoints.begin());
    return static_cast<i64>(s.count(c, f, k, a)) -
           static_cast<i64>(s.count(c, f, k, b));
}

std::optional<u64> first_sign_change(count_flavor f, int k, u64 q, u64 a,
                                     u64 b, u64 x_max) {
    if (q < 3) throw domain_error("race requires modulus q >= 3");
    if (k < 1) throw domain_error("race requires k >= 1");
    if (std::gcd(a % q, q) != 1 || std::gcd(b % q, q) != 1)
        throw domain_error("race residues must be coprime to the modulus");
    if (x_max < 2 || x_max > census_limit)
        throw domain_error("race requires 2 <= X <= 1e9");
    a %= q;
    b %= q;

    const std::vector<u64> primes = primes_up_to(isqrt_u64(x_max));
    i64 diff = 0;
    int initial_sign = 0;
    for (u64 lo = 2; lo <= x_max; lo += segment_length) {
        const u64 hi = std::min(x_max + 1, lo + segment_length);
        const factor_count_slice slice =
            sieve_segment_unchecked(lo, hi, primes);
        u64 r = lo % q;
        const std::size_t len = static_cast<std::size_t>(hi - lo);
        for (std::size_t i = 0; i < len; ++i) {
            const int cnt = f == count_flavor::omega ? slice.omega[i]
                                                     : slice.bigomega[i];
            if (cnt == k && (r == a || r == b)) {
                diff += r == a ? 1 : -1;
                const int sign = diff > 0 ? 1 : diff < 0 ? -1 : 0;
                if (initial_sign == 0)
                    initial_sign = sign;
                else if (sign == -initial_sign)
                    return slice.lo + i;
            }
            if (++r == q) r = 0;
        }
    }
    return std::nullopt;
}

bias_curve_data bias_curve(const race_series& s, count_flavor f, int k,
                           u64 a, u64 b) {
    if (k < 1) throw domain_error("bias curve requires k >= 1");
    bias_curve_data curve;
    curve.flavor = f;
    curve.k = k;
    curve.a = a % s.q;
    curve.b = b % s.q;
    double factorial = 1.0;
    for (int j = 2; j < k; ++j) factorial *= j;
    curve.points.reserve(s.checkpoints.size());
    for (u64 x : s.checkpoints) {
        if (x < 3)
            throw domain_error(
                "bias curve requires checkpoints >= 3 (loglog undefined)");
        const double xd = static_cast<double>(x);
        const double d = static_cast<double>(delta(s, f, k, a, b, x));
        const double value = factorial * std::log(xd) * d /
                             (std::sqrt(xd) *
                              std::pow(std::log(std::log(xd)), k - 1));
        curve.points.emplace_back(x, value);
    }
    return curve;
}

void write_counts_csv(const race_series& s, std::ostream& out) {
    out << "x,f,k,class,count\n";
    for (std::size_t c = 0; c < s.checkpoints.size(); ++c)
        for (int k = 1; k <= s.kmax; ++k)
            for (u64 r = 0; r < s.q; ++r)
                for (count_flavor f :
                     {count_flavor::omega, count_flavor::big_omega})
                    out << s.checkpoints[c] << ',' << flavor_name(f) << ','
                        << k << ',' << r << ',' << s.count(c, f, k, r)
                        << '\n';
}

void write_curve_csv(const bias_curve_data& curve, std::ostream& out) {
    out << "x,value\n";
    for (const auto& [x, value] : curve.points)
        out << x << ',' << format_double(value) << '\n';
}

}  // namespace kprime
