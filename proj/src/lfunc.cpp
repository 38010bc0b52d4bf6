// Dirichlet L-values by Euler-Maclaurin on the Hurwitz zeta pieces.
//
// zeta(s, a) = sum_{n<N} (n+a)^{-s} + (N+a)^{1-s}/(s-1) + (N+a)^{-s}/2
//            + sum_{k=1}^{M} B_{2k}/(2k)! (s)_{2k-1} (N+a)^{-s-2k+1},
// with N growing along with |Im s| and M = 12 Bernoulli corrections.
// When the pieces are combined with character weights summing to zero,
// the 1/(s-1) poles cancel; writing the pole piece per residue as
//   (N+a)^{1-s}/(s-1) = 1/(s-1) - log(N+a) * expm1(w)/w,  w = (1-s)log(N+a),
// and dropping the constant 1/(s-1) (character sum kills it exactly)
// leaves an entire function of s, so the evaluator is regular at s = 1.

#include "kprime/lfunc.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "kprime/errors.hpp"

namespace kprime {
namespace {

// Bernoulli numbers B_2, B_4, ..., B_24.
constexpr std::array<double, 12> bernoulli = {
    1.0 / 6,          -1.0 / 30,        1.0 / 42,       -1.0 / 30,
    5.0 / 66,         -691.0 / 2730,    7.0 / 6,        -3617.0 / 510,
    43867.0 / 798,    -174611.0 / 330,  854513.0 / 138, -236364091.0 / 2730};

// B_{2k} / (2k)!
constexpr std::array<double, 12> bernoulli_over_factorial = [] {
    std::array<double, 12> a{};
    double fact = 1.0;
    for (int k = 1; k <= 12; ++k) {
        fact *= static_cast<double>(2 * k - 1) * static_cast<double>(2 * k);
        a[k - 1] = bernoulli[k - 1] / fact;
    }
    return a;
}();

/// (e^w - 1) / w, entire, evaluated stably near w = 0.
cplx cexpm1_over_w(cplx w) {
    if (std::abs(w) < 0.5) {
        cplx sum = 1.0, term = 1.0;
        for (int k = 2; k <= 22; ++k) {
            term *= w / static_cast<double>(k);
            sum += term;
        }
        return sum;
    }
    return (std::exp(w) - 1.0) / w;
}

}  // namespace

cplx log_gamma(cplx z) {
    if (z.real() <= 0.0)
        throw domain_error("log_gamma supports Re z > 0 only");
    cplx shift = 0.0;
    while (std::abs(z) < 30.0) {
        shift += std::log(z);
        z += 1.0;
    }
    const cplx inv = 1.0 / z;
    const cplx inv2 = inv * inv;
    cplx tail = 0.0;
    cplx p = inv;
    for (int k = 1; k <= 6; ++k) {
        tail += bernoulli[k - 1] /
                static_cast<double>(2 * k * (2 * k - 1)) * p;
        p *= inv2;
    }
    return (z - 0.5) * std::log(z) - z +
           0.5 * std::log(2.0 * std::numbers::pi) + tail - shift;
}

cplx l_value(const dirichlet_character& chi, cplx s) {
    if (chi.principal)
        throw domain_error("L evaluation supports non-principal characters");
    if (s.real() < -2.0 || s.real() > 4.0 || std::abs(s.imag()) > 2500.0)
        throw domain_error(
            "L evaluation outside supported strip -2 <= Re s <= 4, "
            "|Im s| <= 2500");

    const auto n_terms = static_cast<u64>(
        std::max(50.0, std::ceil(0.4 * std::abs(s.imag()))));
    const double q = static_cast<double>(chi.q);

    cplx total = 0.0;
    for (u64 r = 1; r < chi.q; ++r) {
        const cplx w = chi.values[r];
        if (w == cplx{0.0, 0.0}) continue;
        const double alpha = static_cast<double>(r) / q;

        cplx partial = 0.0;
        for (u64 n = 0; n < n_terms; ++n)
            partial += std::exp(-s * std::log(static_cast<double>(n) + alpha));

        const double base = static_cast<double>(n_terms) + alpha;
        const double lb = std::log(base);
        // pole piece minus its constant part (killed by the character sum)
        partial += -lb * cexpm1_over_w((1.0 - s) * lb);

        const cplx bs = std::exp(-s * lb);  // base^{-s}
        partial += 0.5 * bs;

        cplx pw = bs / base;  // base^{-s-2k+1}
        cplx poch = s;        // s (s+1) ... (s+2k-2)
        for (int k = 1; k <= 12; ++k) {
            partial += bernoulli_over_factorial[k - 1] * poch * pw;
            pw /= base * base;
            poch *= (s + static_cast<double>(2 * k - 1)) *
                    (s + static_cast<double>(2 * k));
        }
        total += w * partial;
    }
    return std::exp(-s * std::log(q)) * total;
}

double phase_theta(double t, const dirichlet_character& chi) {
    const double a = chi.parity_sign() == 1 ? 0.0 : 1.0;
    const cplx z(0.25 + 0.5 * a, 0.5 * t);
    return 0.5 * t * std::log(static_cast<double>(chi.q) / std::numbers::pi) +
           log_gamma(z).imag();
}

double rotated_l(double t, const dirichlet_character& chi) {
    const cplx val = l_value(chi, cplx(0.5, t));
    const double th = phase_theta(t, chi);
    return std::cos(th) * val.real() - std::sin(th) * val.imag();
}

}  // namespace kprime
