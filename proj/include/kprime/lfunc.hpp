#pragma once

#include <complex>

#include "kprime/characters.hpp"

namespace kprime {

/// log Gamma(z) on the principal branch, for Re z > 0. Stirling series
/// with Bernoulli tail after upward recurrence to |z| >= 30; absolute
/// error well below 1e-14 on the supported half-plane.
cplx log_gamma(cplx z);

/// L(s, chi) for a non-principal character, via termwise Euler-Maclaurin
/// on L(s) = q^{-s} sum_{r=1}^{q} chi(r) zeta(s, r/q). The Hurwitz pole
/// pieces are folded together across the character sum (sum of chi(r)
/// vanishes), so s = 1 is a regular point of the evaluator and L(1, chi)
/// comes out exactly. Supported strip: -2 <= Re s <= 4, |Im s| <= 2500;
/// absolute error <= 1e-10 for conductor <= 10.
cplx l_value(const dirichlet_character& chi, cplx s);

/// Phase of the completed L-function on the critical line with parity
/// bit a = (1 - chi(-1))/2:
///   theta(t) = (t/2) log(q/pi) + Im log Gamma((1/4 + a/2) + i t/2).
double phase_theta(double t, const dirichlet_character& chi);

/// Rotated critical-line function Z(t) = Re[e^{i theta(t)} L(1/2+it)].
/// For a real primitive non-principal character the root number is +1,
/// so Z is real-analytic with exactly the critical-line zeros of L.
double rotated_l(double t, const dirichlet_character& chi);

}  // namespace kprime
