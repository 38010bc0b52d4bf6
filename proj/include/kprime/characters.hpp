#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace kprime {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using cplx = std::complex<double>;

/// One Dirichlet character mod q. Values are roots of unity on residues
/// coprime to q and zero elsewhere. Stored both exactly (as exponents k
/// with chi(r) = e^{2 pi i k / phi(q)}, sentinel -1 on non-coprime r) and
/// as a dense complex table. Labels follow the Conrey convention: the
/// character with label n is chi_q(n, .), so label 1 is principal.
struct dirichlet_character {
    u64 q = 0;
    u64 label = 0;
    u64 conductor = 0;
    bool principal = false;
    bool real = false;          // all values in {-1, 0, 1}
    i64 exponent_den = 0;       // = phi(q)
    std::vector<i64> exponents; // size q; exponents[r] in [0, phi(q)) or -1
    std::vector<cplx> values;   // size q; exact 0 on non-coprime residues

    /// chi(n) for any nonnegative n (reduced mod q).
    cplx operator()(u64 n) const { return values[n % q]; }

    bool is_principal() const { return principal; }
    bool is_real() const { return real; }
    bool is_primitive() const { return conductor == q; }
    /// chi(-1), always +1 or -1; parity of the character.
    int parity_sign() const { return values[q - 1].real() > 0 ? 1 : -1; }
};

/// The full character group mod q: exactly phi(q) characters, label order.
struct character_group {
    u64 q = 0;
    u64 phi = 0;
    std::vector<dirichlet_character> characters;

    /// Character with the given Conrey label; throws domain_error if the
    /// label is not a coprime residue in [1, q).
    const dirichlet_character& by_label(u64 label) const;
};

/// Builds all phi(q) characters mod q with flags, conductors, and Conrey
/// labels. Requires 3 <= q <= 10^4 (dense value tables).
character_group build_group(u64 q);

/// N(q, a) = #{u mod q : u^2 = a mod q}, by direct enumeration.
u64 sqrt_count(u64 q, u64 a);

/// A(q) = number of real characters in the group.
u64 real_character_count(const character_group& g);

/// conj(chi(a)) - conj(chi(b)). Requires gcd(a, q) = gcd(b, q) = 1.
cplx pair_weight(const character_group& g, const dirichlet_character& chi,
                 u64 a, u64 b);

}  // namespace kprime
