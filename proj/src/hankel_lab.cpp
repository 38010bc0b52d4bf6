#include "kprime/hankel_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "kprime/lfunc.hpp"
#include "kprime/quadrature.hpp"

namespace kprime {
namespace {

constexpr double pi = std::numbers::pi;
constexpr double euler_gamma = 0.57721566490153286060651209008240243;

cplx ipow(cplx base, int k) {
    cplx v = 1.0;
    for (int i = 0; i < k; ++i) v *= base;
    return v;
}

/// 1/Gamma(z) through a pole-free shift: z(z+1)(z+2)(z+3) exp(-lgamma(z+4)).
cplx recip_gamma(cplx z) {
    return z * (z + 1.0) * (z + 2.0) * (z + 3.0) *
           std::exp(-log_gamma(z + 4.0));
}

long double recip_gamma_real(long double t) {
    return t * (t + 1) * (t + 2) * (t + 3) * std::exp(-std::lgamma(t + 4));
}

/// Fornberg weights for the m-th derivative at 0 on the grid x.
std::vector<long double> fd_weights(int m, const std::vector<long double>& x) {
    const std::size_t n = x.size();
    std::vector<std::vector<long double>> c(
        n, std::vector<long double>(static_cast<std::size_t>(m) + 1, 0.0L));
    long double c1 = 1.0L;
    long double c4 = x[0];
    c[0][0] = 1.0L;
    for (std::size_t i = 1; i < n; ++i) {
        const int mn = std::min(static_cast<int>(i), m);
        long double c2 = 1.0L;
        const long double c5 = c4;
        c4 = x[i];
        for (std::size_t j = 0; j < i; ++j) {
            const long double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][static_cast<std::size_t>(k)] =
                        c1 *
                        (k * c[i - 1][static_cast<std::size_t>(k - 1)] -
                         c5 * c[i - 1][static_cast<std::size_t>(k)]) /
                        c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[j][static_cast<std::size_t>(k)] =
                    (c4 * c[j][static_cast<std::size_t>(k)] -
                     k * c[j][static_cast<std::size_t>(k - 1)]) /
                    c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<long double> w(n);
    for (std::size_t i = 0; i < n; ++i)
        w[i] = c[i][static_cast<std::size_t>(m)];
    return w;
}

template <typename F>
cplx geometric_panels(F&& f, double lo, double hi, int panels) {
    const double rho = std::pow(hi / lo, 1.0 / panels);
    cplx total = 0.0;
    double left = lo;
    for (int i = 0; i < panels; ++i) {
        const double right = i + 1 == panels ? hi : left * rho;
        total += gl16(f, left, right);
        left = right;
    }
    return total;
}

template <typename F>
cplx uniform_panels(F&& f, double lo, double hi, int panels) {
    cplx total = 0.0;
    const double width = (hi - lo) / panels;
    for (int i = 0; i < panels; ++i)
        total += gl16(f, lo + i * width,
                      i + 1 == panels ? hi : lo + (i + 1) * width);
    return total;
}

}  // namespace

recip_gamma_table recip_gamma_derivs(int jmax) {
    if (jmax < 0 || jmax > 20)
        throw domain_error("reciprocal-gamma derivative table supports jmax <= 20");
    // Taylor coefficients a_k of 1/Gamma at 0: a_1 = 1, a_2 = gamma_E,
    // (k-1) a_k = gamma_E a_{k-1} - sum_{j=2}^{k-1} (-1)^j zeta(j) a_{k-j}
    std::vector<double> a(static_cast<std::size_t>(std::max(jmax, 2)) + 1, 0.0);
    a[1] = 1.0;
    a[2] = euler_gamma;
    for (int k = 3; k <= jmax; ++k) {
        double s = euler_gamma * a[static_cast<std::size_t>(k - 1)];
        for (int j = 2; j <= k - 1; ++j)
            s -= (j % 2 == 0 ? 1.0 : -1.0) * std::riemann_zeta(double(j)) *
                 a[static_cast<std::size_t>(k - j)];
        a[static_cast<std::size_t>(k)] = s / (k - 1);
    }
    recip_gamma_table table;
    table.values.assign(static_cast<std::size_t>(jmax) + 1, 0.0);
    double factorial = 1.0;
    for (int j = 1; j <= jmax; ++j) {
        factorial *= j;
        table.values[static_cast<std::size_t>(j)] =
            factorial * a[static_cast<std::size_t>(j)];
    }
    return table;
}

cplx recip_gamma_derivative_fd(int j, cplx z) {
    if (j < 0 || j > 6)
        throw domain_error("finite-difference derivative supports j <= 6");
    if (z.real() <= -3.9)
        throw domain_error("derivative evaluation requires Re(z) > -3.9");
    // Step balances h^8 truncation against h^{-j} roundoff per order.
    constexpr double steps[7] = {1e-2, 1e-2, 1e-2, 1.5e-2, 4e-2, 5e-2, 6e-2};
    const double h = steps[j];
    const int m = (j + 8) / 2;  // 2m+1 points, exactness degree 2m >= j+8
    std::vector<long double> grid;
    for (int s = -m; s <= m; ++s) grid.push_back(static_cast<long double>(s));
    const std::vector<long double> w = fd_weights(j, grid);

    if (z.imag() == 0.0) {
        long double sum = 0.0L;
        for (int s = -m; s <= m; ++s)
            sum += w[static_cast<std::size_t>(s + m)] *
                   recip_gamma_real(static_cast<long double>(z.real()) +
                                    static_cast<long double>(s) * h);
        return static_cast<double>(
            sum / std::pow(static_cast<long double>(h), j));
    }
    cplx sum = 0.0;
    for (int s = -m; s <= m; ++s)
        sum += static_cast<double>(w[static_cast<std::size_t>(s + m)]) *
               recip_gamma(z + double(s) * h);
    return sum / std::pow(h, j);
}

cplx recip_gamma_derivative_cauchy(int j, cplx z) {
    if (j < 0 || j > 20)
        throw domain_error("Cauchy derivative oracle supports j <= 20");
    constexpr int nodes = 512;
    constexpr double radius = 2.0;
    cplx sum = 0.0;
    for (int i = 0; i < nodes; ++i) {
        const double theta = 2.0 * pi * (i + 0.5) / nodes;
        sum += recip_gamma(z + std::polar(radius, theta)) *
               std::polar(1.0, -j * theta);
    }
    double factorial = 1.0;
    for (int i = 2; i <= j; ++i) factorial *= i;
    return factorial * sum / (double(nodes) * std::pow(radius, j));
}

cplx hankel_integral(int k, const hankel_contour& contour, double x) {
    if (k < 0 || k > 8)
        throw domain_error("hankel integral supports 0 <= k <= 8");
    if (x < std::exp(4.0))
        throw domain_error("hankel integral requires x >= e^4");
    const cplx a = contour.center;
    const double delta = contour.reach;
    const double r = contour.radius;
    if (!(delta > 0.0) || !(r > 0.0) || r > std::min(delta / 10.0, 1e-2))
        throw domain_error("contour radius must satisfy 0 < r <= min(reach/10, 1e-2)");
    if (a.real() <= 2.0 * delta)
        throw domain_error("contour requires Re(center) > 2*reach");

    const double big_l = std::log(x);
    // legs folded onto sigma in [r, delta], everything scaled by x^{-a}
    auto leg = [&](double sigma) {
        const double ls = std::log(sigma);
        return (ipow(cplx(ls, -pi), k) - ipow(cplx(ls, pi), k)) *
               std::exp(-sigma * big_l) / (a - sigma);
    };
    auto circle = [&](double alpha) {
        const cplx w = std::polar(r, alpha);
        return ipow(cplx(std::log(r), alpha), k) * std::exp(w * big_l) *
               cplx(0.0, 1.0) * w / (a + w);
    };

    const int start = std::max(6, contour.samples_per_unit / 8);
    cplx previous = 0.0;
    const double floor_scale = 1e-12 / std::abs(a * big_l);
    for (int attempt = 0, panels = start; attempt <= 20;
         ++attempt, panels *= 2) {
        const cplx total = geometric_panels(leg, r, delta, panels) +
                           uniform_panels(circle, -pi, pi, panels);
        if (attempt > 0 &&
            std::abs(total - previous) <=
                1e-8 * std::max(std::abs(total), floor_scale))
            return std::exp(a * big_l) * total / cplx(0.0, 2.0 * pi);
        previous = total;
    }
    throw accuracy_error("hankel integral failed to converge in 20 refinements");
}

cplx main_term(int k, cplx a, double x, const recip_gamma_table& derivs) {
    if (k < 0 || k > 8) throw domain_error("main term supports 0 <= k <= 8");
    if (x < std::exp(4.0)) throw domain_error("main term requires x >= e^4");
    if (static_cast<std::size_t>(k) >= derivs.values.size() && k >= 2)
        throw domain_error("derivative table too short for requested k");
    if (k == 0) return 0.0;
    const double big_l = std::log(x);
    const double ll = std::log(big_l);
    double brace = k * std::pow(ll, k - 1);
    double binom = 1.0 * k;  // C(k, 1)
    for (int j = 2; j <= k; ++j) {
        binom = binom * (k - j + 1) / j;  // C(k, j)
        brace += binom * std::pow(ll, k - j) *
                 derivs.values[static_cast<std::size_t>(j)];
    }
    const double sign = k % 2 == 0 ? 1.0 : -1.0;
    return sign * std::exp(a * big_l) / (a * big_l) * brace;
}

double lau_wu_check(int j, cplx z, double X) {
    if (j < 0 || j > 6) throw domain_error("loop-integral check supports j <= 6");
    if (X < 5.0 || X > 50.0)
        throw domain_error("loop-integral check requires X in [5, 50]");
    if (std::abs(z.real()) > 1.0)
        throw domain_error("loop-integral check requires |Re(z)| <= 1");
    const double r = 1e-3;
    const cplx up = std::exp(cplx(0.0, pi) * z);    // e^{+i pi z}
    const cplx down = std::exp(cplx(0.0, -pi) * z); // e^{-i pi z}

    auto leg = [&](double t) {
        const double lt = std::log(t);
        return (ipow(cplx(lt, -pi), j) * up - ipow(cplx(lt, pi), j) * down) *
               std::exp(-z * lt) * std::exp(-t);
    };
    auto circle = [&](double alpha) {
        const cplx logw = cplx(std::log(r), alpha);
        const cplx w = std::polar(r, alpha);
        return ipow(logw, j) * std::exp(-z * logw) * std::exp(w) *
               cplx(0.0, 1.0) * w;
    };

    cplx total = 0.0;
    cplx previous = 0.0;
    bool converged = false;
    for (int attempt = 0, panels = 8; attempt <= 20; ++attempt, panels *= 2) {
        total = geometric_panels(leg, r, 1.0, panels) +
                uniform_panels(leg, 1.0, X, panels) +
                uniform_panels(circle, -pi, pi, panels);
        if (attempt > 0 && std::abs(total - previous) <=
                               std::max(1e-13 * std::abs(total), 1e-16)) {
            converged = true;
            break;
        }
        previous = total;
    }
    if (!converged)
        throw accuracy_error("loop integral failed to converge in 20 refinements");
    total /= cplx(0.0, 2.0 * pi);

    const cplx derivative =
        z == cplx(0.0)
            ? cplx(recip_gamma_derivs(std::max(j, 1))
                       .values[static_cast<std::size_t>(j)])
            : recip_gamma_derivative_fd(j, z);
    const double sign = j % 2 == 0 ? 1.0 : -1.0;
    return std::abs(total - sign * derivative);
}

double lau_wu_bound(int j, cplx z, double X) {
    if (j < 0) throw domain_error("bound requires j >= 0");
    // Truncation tail of the loop integral. The two legs beyond X carry
    // |e^{i pi z}(log t - i pi)^j - e^{-i pi z}(log t + i pi)^j|
    //   <= 2 e^{pi |Im z|} (log t + pi)^j,
    // and dividing by |2 pi i| leaves the sharp constant 1/pi (reached
    // with equality by j = 0, Re z = 1/2, where the leg difference is
    // exactly 2 i sin(pi z)).
    auto integrand = [&](double t) {
        return std::pow(std::log(t) + pi, j) *
               std::exp(-z.real() * std::log(t) - t);
    };
    double tail = 0.0;
    for (double left = X; left < X + 70.0; left += 0.5) {
        const double part = gl16(integrand, left, left + 0.5);
        tail += part;
        if (part < 1e-20 * tail) break;
    }
    return std::exp(pi * std::abs(z.imag())) / pi * tail;
}

}  // namespace kprime
