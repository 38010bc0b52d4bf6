#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace kprime {

/// Abscissae and weights of the 16-point Gauss-Legendre rule on [-1, 1].
extern const std::array<double, 16> gl16_nodes;
extern const std::array<double, 16> gl16_weights;

template <typename T>
struct quad_result_t {
    T value{};
    double residual = 0.0;  // accumulated split-vs-whole discrepancies
};

using quad_result = quad_result_t<double>;

/// 16-point Gauss-Legendre estimate of the integral of f over [a, b].
/// f may return double or std::complex<double>.
template <typename F>
auto gl16(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    decltype(f(a)) acc{};
    for (std::size_t i = 0; i < 16; ++i)
        acc += gl16_weights[i] * f(mid + half * gl16_nodes[i]);
    return half * acc;
}

/// One adaptive panel: accepted when the whole-panel rule matches the
/// two half-panel rules within tol, otherwise split recursively with
/// halved tolerance (depth-capped; the cap leaves its discrepancy in the
/// residual rather than recursing forever).
template <typename F>
auto adaptive_panel(F&& f, double a, double b, double tol, int depth = 0)
    -> quad_result_t<decltype(f(a))> {
    const double mid = 0.5 * (a + b);
    const auto whole = gl16(f, a, b);
    const auto halves = gl16(f, a, mid) + gl16(f, mid, b);
    const double disc = std::abs(whole - halves);
    if (disc <= tol || depth >= 24) return {halves, disc};
    const auto left = adaptive_panel(f, a, mid, 0.5 * tol, depth + 1);
    const auto right = adaptive_panel(f, mid, b, 0.5 * tol, depth + 1);
    return {left.value + right.value, left.residual + right.residual};
}

/// Composite adaptive integration of f over [a, b]: fixed-width panels,
/// each refined by adaptive_panel at the given per-panel tolerance.
template <typename F>
auto integrate_panels(F&& f, double a, double b, double panel_width,
                      double panel_tol) -> quad_result_t<decltype(f(a))> {
    quad_result_t<decltype(f(a))> total{};
    double left = a;
    while (left < b) {
        const double right = std::min(b, left + panel_width);
        const auto part = adaptive_panel(f, left, right, panel_tol);
        total.value += part.value;
        total.residual += part.residual;
        left = right;
    }
    return total;
}

}  // namespace kprime
