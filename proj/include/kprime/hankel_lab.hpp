#pragma once
// Numerical laboratory for truncated Hankel-contour integrals.
//
// The contour H(a, delta) runs from a - delta along the lower side of
// the branch cut of log(s - a), circles the branch point at radius r,
// and returns along the upper side. Writing s = a - t on the legs the
// two sides combine into a single real integral of
//   [ (log t - i pi)^k - (log t + i pi)^k ] x^{a-t} / (a - t),
// and the circle contributes its own closed parameterization. The
// integral is independent of r anywhere inside the analyticity region,
// so r is fixed at 1e-3 (the analytically convenient r < 1/x is
// numerically hopeless for x = e^50) and r-invariance is verified
// separately. x^s is evaluated in log space relative to x^a so the
// legs never overflow.
//
// The same machinery checks the reciprocal-gamma loop integral
//   (1/2pi i) Int_{H(0,X)} w^{-z} (log w)^j e^w dw
//     = (-1)^j d^j/dz^j (1/Gamma)(z) + E_{j,z}(X),
// whose truncation error E admits an explicit integral bound.

#include <complex>
#include <vector>

#include "kprime/errors.hpp"

namespace kprime {

using cplx = std::complex<double>;

/// Truncated Hankel contour around `center` with legs of length `reach`
/// and a circle of `radius` at the branch point.
struct hankel_contour {
    cplx center;                // the branch point a
    double reach = 0.2;         // delta, leg length
    double radius = 1e-3;       // r, 0 < r <= min(reach/10, 1e-2)
    int samples_per_unit = 64;  // initial quadrature density
};

/// Derivatives of the reciprocal gamma function at 0:
/// values[j] = (d^j/dz^j)(1/Gamma)(0); values[0] = 0, values[1] = 1.
struct recip_gamma_table {
    std::vector<double> values;
};

/// Taylor coefficients of 1/Gamma at 0 scaled to derivatives, from the
/// classical zeta recurrence a_1 = 1, a_2 = gamma_E,
/// (k-1) a_k = gamma_E a_{k-1} - sum_{j=2}^{k-1} (-1)^j zeta(j) a_{k-j}.
/// jmax <= 20.
recip_gamma_table recip_gamma_derivs(int jmax);

/// (d^j/dz^j)(1/Gamma)(z) by order-8 central finite differences of
/// 1/Gamma(z) = z (z+1) (z+2) (z+3) exp(-log Gamma(z+4)); j <= 6,
/// Re(z) > -3.9.
cplx recip_gamma_derivative_fd(int j, cplx z);

/// Same derivative by a Cauchy integral over a circle of radius 2,
/// trapezoidal rule with 512 half-offset nodes; independent oracle.
cplx recip_gamma_derivative_cauchy(int j, cplx z);

/// (1/2pi i) Int_{H(a, delta)} log^k(s - a) x^s / s ds for k <= 8 and
/// x >= e^4, by Gauss-Legendre panels on a geometric leg mesh, refined
/// until successive halvings agree to 1e-8 relative (at most 20
/// refinements, then an accuracy error).
cplx hankel_integral(int k, const hankel_contour& contour, double x);

/// Leading asymptotic of the Hankel integral:
///   (-1)^k x^a/(a log x) { k (loglog x)^{k-1}
///                          + sum_{j=2}^k C(k,j) (loglog x)^{k-j} values[j] }.
cplx main_term(int k, cplx a, double x, const recip_gamma_table& derivs);

/// |(1/2pi i) Int_{H(0,X)} w^{-z} (log w)^j e^w dw - (-1)^j (1/Gamma)^(j)(z)|
/// for j <= 6, X in [5, 50]; must stay below lau_wu_bound.
double lau_wu_check(int j, cplx z, double X);

/// Explicit truncation bound (e^{pi |Im z|}/pi) Int_X^inf
/// (log t + pi)^j t^{-Re z} e^{-t} dt, evaluated numerically. The
/// constant 1/pi is sharp: j = 0, Re z = 1/2 attains it with equality.
double lau_wu_bound(int j, cplx z, double X);

}  // namespace kprime
