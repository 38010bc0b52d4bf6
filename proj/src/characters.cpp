// Dirichlet characters mod q, organized by Conrey labels.
//
// The unit group mod q splits over the prime-power factors of q. For an
// odd prime power p^e the factor is cyclic, generated by the smallest g
// that is a primitive root mod p and mod p^2 (such a g generates every
// (Z/p^e)^x). For 2^e with e >= 3 the factor is {+-1} x <5>. Writing both
// a label n and an argument m in these coordinates makes the character
// value a root of unity whose exponent is a bilinear form in the
// coordinates. Every value is a phi(q)-th root of unity, so characters
// are stored exactly as integer exponent vectors over the common
// denominator phi(q); the complex table is derived from that.

#include "kprime/characters.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "kprime/errors.hpp"

namespace kprime {
namespace {

u64 pow_mod(u64 base, u64 exp, u64 mod) {
    u64 r = 1 % mod;
    base %= mod;
    while (exp) {
        if (exp & 1) r = (r * base) % mod;
        base = (base * base) % mod;
        exp >>= 1;
    }
    return r;
}

std::vector<std::pair<u64, u64>> factorize(u64 n) {
    std::vector<std::pair<u64, u64>> out;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        u64 e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

/// Smallest g >= 2 generating (Z/p^e)^x for every e (primitive root mod p
/// whose order does not collapse mod p^2).
u64 stable_primitive_root(u64 p) {
    auto fac = factorize(p - 1);
    for (u64 g = 2;; ++g) {
        bool ok = true;
        for (const auto& [ell, unused] : fac) {
            if (pow_mod(g, (p - 1) / ell, p) == 1) { ok = false; break; }
        }
        if (ok && pow_mod(g, p - 1, p * p) != 1) return g;
    }
}

/// One prime-power factor of q with coordinates for its unit group:
/// x = g^a (odd p), x = (-1)^a (2^2), x = (-1)^a 5^b (2^e, e >= 3).
struct component {
    u64 pe = 1;
    u64 a_order = 1;
    u64 b_order = 1;
    std::vector<i64> a;
    std::vector<i64> b;
};

component make_component(u64 p, u64 e) {
    component c;
    c.pe = 1;
    for (u64 i = 0; i < e; ++i) c.pe *= p;
    c.a.assign(c.pe, 0);
    c.b.assign(c.pe, 0);
    if (p == 2) {
        if (e == 1) return c;  // trivial unit group
        c.a_order = 2;
        for (u64 x = 3; x < c.pe; x += 4) c.a[x] = 1;  // x = 3 mod 4
        if (e >= 3) {
            c.b_order = c.pe / 4;
            u64 five = 5 % c.pe;
            u64 pw = 1;
            for (u64 k = 0; k < c.b_order; ++k) {
                c.b[pw] = static_cast<i64>(k);
                c.b[c.pe - pw] = static_cast<i64>(k);  // -5^k has the same b
                pw = (pw * five) % c.pe;
            }
        }
        return c;
    }
    c.a_order = c.pe / p * (p - 1);  // phi(p^e)
    u64 g = stable_primitive_root(p);
    u64 pw = 1;
    for (u64 k = 0; k < c.a_order; ++k) {
        c.a[pw] = static_cast<i64>(k);
        pw = (pw * g) % c.pe;
    }
    return c;
}

/// Exponent over phi(q) of the value chi_q(n, m), given the components.
i64 pair_exponent(const std::vector<component>& comps, u64 phi_q, u64 n,
                  u64 m) {
    i64 total = 0;
    const i64 den = static_cast<i64>(phi_q);
    for (const auto& c : comps) {
        const i64 an = c.a[n % c.pe], am = c.a[m % c.pe];
        const i64 bn = c.b[n % c.pe], bm = c.b[m % c.pe];
        total += (an * am) % static_cast<i64>(c.a_order) *
                 (den / static_cast<i64>(c.a_order));
        total += (bn * bm) % static_cast<i64>(c.b_order) *
                 (den / static_cast<i64>(c.b_order));
        total %= den;
    }
    return total;
}

cplx value_from_exponent(i64 k, i64 den) {
    if (k == 0) return {1.0, 0.0};
    if (2 * k == den) return {-1.0, 0.0};
    if (4 * k == den) return {0.0, 1.0};
    if (4 * k == 3 * den) return {0.0, -1.0};
    const double ang = 2.0 * std::numbers::pi *
                       (static_cast<double>(k) / static_cast<double>(den));
    return {std::cos(ang), std::sin(ang)};
}

std::vector<u64> divisors_ascending(u64 q) {
    std::vector<u64> d;
    for (u64 f = 1; f <= q; ++f)
        if (q % f == 0) d.push_back(f);
    return d;
}

/// Smallest f | q such that chi(n) = 1 whenever n = 1 mod f, gcd(n,q) = 1.
u64 conductor_of(const dirichlet_character& chi, const std::vector<u64>& divs) {
    for (u64 f : divs) {
        bool ok = true;
        for (u64 n = 1 + f; n < chi.q && ok; n += f)
            if (chi.exponents[n] > 0) ok = false;
        if (ok) return f;
    }
    return chi.q;  // unreachable: f = q always passes
}

}  // namespace

character_group build_group(u64 q) {
    if (q < 3) throw domain_error("character group requires modulus >= 3");
    if (q > 10000)
        throw domain_error("character group limited to modulus <= 10000");

    std::vector<component> comps;
    u64 phi = 1;
    for (const auto& [p, e] : factorize(q)) {
        comps.push_back(make_component(p, e));
        u64 pe = comps.back().pe;
        phi *= pe / p * (p - 1);
    }

    character_group g;
    g.q = q;
    g.phi = phi;
    const auto divs = divisors_ascending(q);

    for (u64 n = 1; n < q; ++n) {
        if (std::gcd(n, q) != 1) continue;
        dirichlet_character chi;
        chi.q = q;
        chi.label = n;
        chi.exponent_den = static_cast<i64>(phi);
        chi.exponents.assign(q, -1);
        chi.values.assign(q, cplx{0.0, 0.0});
        bool real = true;
        for (u64 m = 1; m < q; ++m) {
            if (std::gcd(m, q) != 1) continue;
            const i64 k = pair_exponent(comps, phi, n, m);
            chi.exponents[m] = k;
            chi.values[m] = value_from_exponent(k, chi.exponent_den);
            if (k != 0 && 2 * k != chi.exponent_den) real = false;
        }
        chi.principal = (n == 1);
        chi.real = real;
        chi.conductor = conductor_of(chi, divs);
        g.characters.push_back(std::move(chi));
    }
    return g;
}

const dirichlet_character& character_group::by_label(u64 label) const {
    label %= q;
    for (const auto& chi : characters)
        if (chi.label == label) return chi;
    throw domain_error("character label must be coprime to the modulus");
}

u64 sqrt_count(u64 q, u64 a) {
    if (q == 0) throw domain_error("square-root count requires modulus >= 1");
    a %= q;
    u64 count = 0;
    for (u64 u = 0; u < q; ++u)
        if (u * u % q == a) ++count;
    return count;
}

u64 real_character_count(const character_group& g) {
    u64 count = 0;
    for (const auto& chi : g.characters)
        if (chi.real) ++count;
    return count;
}

cplx pair_weight(const character_group& g, const dirichlet_character& chi,
                 u64 a, u64 b) {
    if (std::gcd(a % g.q, g.q) != 1 || std::gcd(b % g.q, g.q) != 1)
        throw domain_error("race residues must be coprime to the modulus");
    return std::conj(chi(a)) - std::conj(chi(b));
}

}  // namespace kprime
