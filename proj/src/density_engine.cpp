// Logarithmic densities of prime races from catalogued zeros.
//
// Under the standing hypotheses the normalized race difference has a
// limiting distribution whose characteristic function is the Bessel
// product
//   Phi(x) = prod_{chi != chi0} prod_{gamma > 0}
//              J0( 2|chi(a)-chi(b)| x / sqrt(1/4 + gamma^2) ),
// and the density is 1/2 plus a sine-kernel integral against Phi. A
// finite catalogue reaching height H drops the factors with gamma > H;
// since J0(eps) ~ exp(-eps^2/4) for small arguments, those factors are
// modeled by the Gaussian exp(-s x^2) with s obtained by integrating
// amp^2/(4 (1/4 + t^2)) against the smooth zero density
// (1/2pi) log(cond t / 2pi) dt over t > H:
//   s = sum_chi (amp^2/4) (1/2pi) [ (log(cH)+1)/H
//                                   - (log(cH)/3 + 1/9)/(4 H^3) ],
// with c = cond/(2pi) (from 1/(1/4+t^2) = 1/t^2 - 1/(4t^4) + ...).

#include "kprime/density_engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

#include "kprime/errors.hpp"
#include "kprime/quadrature.hpp"

namespace kprime {
namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
// cited decay |Phi(x)| <= exp(-0.0454 phi(q) x) for x >= 200
constexpr double decay_rate = 0.0454;

/// integral_H^inf log(c t) / (1/4 + t^2) dt expanded to two orders.
double tail_density_integral(u64 conductor, double H) {
    const double c = static_cast<double>(conductor) / two_pi;
    const double lc = std::log(c * H);
    return (lc + 1.0) / H - (lc / 3.0 + 1.0 / 9.0) / (4.0 * H * H * H);
}

double tail_exponent_of(const bias_profile& p) {
    if (p.height_limit <= 0.0) return 0.0;
    double s = 0.0;
    for (const auto& [amp, cond] : p.tail_terms)
        s += amp * amp / 4.0 / two_pi *
             tail_density_integral(cond, p.height_limit);
    return s;
}

double bessel_product(const std::vector<double>& freqs, double x) {
    double prod = 1.0;
    for (double f : freqs) {
        prod *= ::j0(f * x);
        if (std::abs(prod) < 1e-320) return 0.0;
    }
    return prod;
}

std::vector<double> factor_frequencies(const bias_profile& p) {
    std::vector<double> freqs;
    freqs.reserve(p.factors.size());
    for (const auto& f : p.factors)
        freqs.push_back(f.amplitude / std::sqrt(0.25 + f.gamma * f.gamma));
    return freqs;
}

void check_config(const quadrature_config& cfg) {
    if (!(cfg.panel_tolerance > 0.0) || cfg.panel_tolerance > 1e-3)
        throw domain_error("panel tolerance must lie in (0, 1e-3]");
    if (cfg.mode == cutoff_mode::fixed && !(cfg.fixed_cutoff > 0.0))
        throw domain_error("fixed cutoff must be positive");
}

/// integral_U^inf x^p envelope(x) dx, numerically, for a decaying
/// envelope; used for honest truncation bounds.
template <typename Env>
double envelope_tail(double p, double U, Env env) {
    double total = 0.0;
    for (double left = U; left < U + 4000.0; left += 0.5) {
        const double part =
            gl16([&](double x) { return std::pow(x, p) * env(x); }, left,
                 left + 0.5);
        total += part;
        if (env(left + 0.5) < 1e-300 ||
            std::abs(part) < 1e-18 * std::max(std::abs(total), 1e-300))
            break;
    }
    return total;
}

u64 inverse_mod(u64 n, u64 q) {
    i64 t = 0, nt = 1;
    i64 r = static_cast<i64>(q), nr = static_cast<i64>(n % q);
    while (nr != 0) {
        const i64 quo = r / nr;
        t = std::exchange(nt, t - quo * nt);
        r = std::exchange(nr, r - quo * nr);
    }
    if (r != 1) throw domain_error("residue not invertible mod q");
    return static_cast<u64>((t % static_cast<i64>(q) + static_cast<i64>(q)) %
                            static_cast<i64>(q));
}

}  // namespace

bias_profile build_profile(const character_group& g, const zero_catalog& cat,
                           u64 a, u64 b, double height_limit) {
    if (cat.modulus != g.q)
        throw domain_error("catalog/group modulus mismatch");
    a %= g.q;
    b %= g.q;
    if (std::gcd(a, g.q) != 1 || std::gcd(b, g.q) != 1)
        throw domain_error("race residues must be coprime to the modulus");
    if (cat.validated_height <= 0.0)
        throw domain_error(
            "zero catalog must pass validate() before building profiles");

    bias_profile p;
    p.q = g.q;
    p.phi_q = g.phi;
    p.a = a;
    p.b = b;
    p.mean_count_diff = static_cast<i64>(sqrt_count(g.q, a)) -
                        static_cast<i64>(sqrt_count(g.q, b));
    p.real_char_count = real_character_count(g);

    double h = std::min(height_limit, cat.validated_height);
    for (const auto& chi : g.characters) {
        if (chi.principal) continue;
        const auto it = cat.lists.find(chi.label);
        if (it == cat.lists.end())
            throw incompleteness_error("catalog has no zero list for label " +
                                       std::to_string(chi.label));
        h = std::min(h, it->second.height_limit);
    }
    if (!(h > 0.0)) throw domain_error("profile height limit must be positive");
    p.height_limit = h;

    for (const auto& chi : g.characters) {
        if (chi.principal) continue;
        const double amp = 2.0 * std::abs(chi(a) - chi(b));
        p.tail_terms.emplace_back(amp, chi.conductor);
        if (amp == 0.0) continue;
        for (double gamma : cat.lists.at(chi.label).gammas) {
            if (gamma > h) break;
            p.factors.push_back({amp, gamma});
        }
    }
    std::sort(p.factors.begin(), p.factors.end(),
              [](const bias_factor& u, const bias_factor& v) {
                  return u.gamma < v.gamma;
              });
    return p;
}

double phi(const bias_profile& p, double x, bool tail_correction) {
    x = std::abs(x);
    double prod = bessel_product(factor_frequencies(p), x);
    if (tail_correction)
        prod *= std::exp(-tail_exponent_of(p) * x * x);
    return prod;
}

double density_session::raw_phi(double x) {
    x = std::abs(x);
    const u64 key = std::bit_cast<u64>(x);
    if (const auto it = cache_.find(key); it != cache_.end())
        return it->second;
    if (freqs_.size() != profile_.factors.size())
        freqs_ = factor_frequencies(profile_);
    const double prod = bessel_product(freqs_, x);
    cache_.emplace(key, prod);
    return prod;
}

double density_session::tail_exponent() const {
    return tail_exponent_of(profile_);
}

double density_session::pick_cutoff(const quadrature_config& cfg) {
    if (cfg.mode == cutoff_mode::fixed) return cfg.fixed_cutoff;
    for (double u = 200.0; u <= 2000.0; u += 0.25)
        if (std::abs(raw_phi(u)) < 1e-16) return u;
    return 2000.0;
}

density_result density_session::density(count_flavor flavor, int k,
                                        const quadrature_config& cfg) {
    if (k < 1) throw domain_error("density requires k >= 1");
    check_config(cfg);

    density_result out;
    out.lambda_k = std::ldexp(1.0, -(k - 1));
    if (profile_.mean_count_diff == 0) {
        out.value = 0.5;  // both residues or both non-residues
        return out;
    }
    const double theta =
        out.lambda_k * static_cast<double>(profile_.mean_count_diff);
    const double sigma =
        (flavor == count_flavor::big_omega && k % 2 == 1) ? -1.0 : 1.0;
    const double U = pick_cutoff(cfg);
    const double s = tail_exponent();

    auto run = [&](bool tail) {
        double value = 0.0, resid = 0.0;
        auto f = [&](double x) {
            const double core = x == 0.0 ? theta : std::sin(theta * x) / x;
            const double damp = tail ? std::exp(-s * x * x) : 1.0;
            return core * raw_phi(x) * damp;
        };
        for (double left = 0.0; left < U; left += 0.25) {
            const auto part = adaptive_panel(f, left, std::min(U, left + 0.25),
                                             cfg.panel_tolerance);
            value += part.value;
            resid += part.residual;
        }
        return std::pair<double, double>{value, resid};
    };
    const auto [i_on, r_on] = run(true);
    const auto [i_off, r_off] = run(false);

    out.integral_part = 2.0 * (cfg.tail_correction ? i_on : i_off);
    out.value = 0.5 + sigma * out.integral_part / two_pi;

    const double rate = decay_rate * static_cast<double>(profile_.phi_q);
    const double cutoff_bound = 2.0 *
                                std::min(std::abs(theta), 1.0 / U) *
                                std::exp(-rate * U) / rate;
    out.est_error = (2.0 * std::max(r_on, r_off) + cutoff_bound +
                     2.0 * std::abs(i_on - i_off)) /
                    two_pi;
    return out;
}

moment_result density_session::moment(int j, const quadrature_config& cfg) {
    if (j < 0 || j > 6) throw domain_error("moment order must be in 0..6");
    check_config(cfg);
    if (profile_.a == profile_.b)
        throw domain_error("moments diverge for a = b (Phi has no decay)");

    const double U = pick_cutoff(cfg);
    const double s = tail_exponent();
    const double p2j = 2.0 * j;

    auto run = [&](bool tail) {
        double value = 0.0, resid = 0.0;
        auto f = [&](double x) {
            const double damp = tail ? std::exp(-s * x * x) : 1.0;
            return std::pow(x, p2j) * raw_phi(x) * damp;
        };
        for (double left = 0.0; left < U; left += 0.25) {
            const double right = std::min(U, left + 0.25);
            const double tol =
                cfg.panel_tolerance * std::max(1.0, std::pow(right, p2j));
            const auto part = adaptive_panel(f, left, right, tol);
            value += part.value;
            resid += part.residual;
        }
        return std::pair<double, double>{value, resid};
    };
    const auto [m_on, r_on] = run(true);
    const auto [m_off, r_off] = run(false);

    const double rate = decay_rate * static_cast<double>(profile_.phi_q);
    const double cutoff =
        cfg.tail_correction
            ? 2.0 * envelope_tail(p2j, U,
                                  [&](double x) { return std::exp(-s * x * x); })
            : 2.0 * envelope_tail(p2j, U,
                                  [&](double x) { return std::exp(-rate * x); });

    moment_result out;
    out.value = 2.0 * (cfg.tail_correction ? m_on : m_off);
    out.est_error = 2.0 * std::max(r_on, r_off) + std::abs(cutoff) +
                    2.0 * std::abs(m_on - m_off);
    return out;
}

density_result density(count_flavor flavor, int k, const bias_profile& p,
                       const quadrature_config& cfg) {
    density_session session(p);
    return session.density(flavor, k, cfg);
}

moment_result moment(const bias_profile& p, int j,
                     const quadrature_config& cfg) {
    density_session session(p);
    return session.moment(j, cfg);
}

variance_result variance(const character_group& g, const zero_catalog& cat,
                         u64 a, u64 b) {
    if (cat.modulus != g.q)
        throw domain_error("catalog/group modulus mismatch");
    a %= g.q;
    b %= g.q;
    if (std::gcd(a, g.q) != 1 || std::gcd(b, g.q) != 1)
        throw domain_error("race residues must be coprime to the modulus");
    if (cat.validated_height <= 0.0)
        throw domain_error("zero catalog must pass validate() first");

    variance_result out;
    for (const auto& chi : g.characters) {
        if (chi.principal) continue;
        const double w = std::norm(chi(b) - chi(a));
        if (w == 0.0) continue;
        const auto it = cat.lists.find(chi.label);
        if (it == cat.lists.end())
            throw incompleteness_error("catalog has no zero list for label " +
                                       std::to_string(chi.label));
        double sum = 0.0;
        for (double gamma : it->second.gammas)
            sum += 1.0 / (0.25 + gamma * gamma);
        out.value += w * 2.0 * sum;
        out.tail += w * 2.0 / two_pi *
                    tail_density_integral(chi.conductor,
                                          it->second.height_limit);
    }
    out.value += out.tail;
    return out;
}

double asymptotic_density(count_flavor flavor, int k, int K,
                          const std::vector<double>& moments, u64 A) {
    if (k < 1) throw domain_error("asymptotic density requires k >= 1");
    if (K < 0 || moments.size() <= static_cast<std::size_t>(K))
        throw domain_error("moment list must cover orders 0..K");
    const double lambda = std::ldexp(1.0, -(k - 1));
    double sum = 0.0;
    double fact = 1.0;  // (2j+1)!
    for (int j = 0; j <= K; ++j) {
        if (j > 0)
            fact *= static_cast<double>(2 * j) * static_cast<double>(2 * j + 1);
        sum += std::pow(lambda * static_cast<double>(A), 2 * j + 1) *
               (j % 2 == 0 ? 1.0 : -1.0) * moments[j] / fact;
    }
    if (flavor == count_flavor::big_omega)
        return 0.5 + (k % 2 == 1 ? 1.0 : -1.0) * sum / two_pi;
    return 0.5 - sum / two_pi;
}

double predict_delta(count_flavor flavor, int k, const character_group& g,
                     const zero_catalog& cat, u64 a, u64 b, double T0,
                     double x) {
    if (k < 1) throw domain_error("prediction requires k >= 1");
    if (x < 16.0) throw domain_error("prediction requires x >= 16");
    if (cat.modulus != g.q)
        throw domain_error("catalog/group modulus mismatch");
    a %= g.q;
    b %= g.q;
    if (std::gcd(a, g.q) != 1 || std::gcd(b, g.q) != 1)
        throw domain_error("race residues must be coprime to the modulus");
    for (const auto& chi : g.characters) {
        if (chi.principal) continue;
        const auto it = cat.lists.find(chi.label);
        if (it == cat.lists.end())
            throw incompleteness_error("catalog has no zero list for label " +
                                       std::to_string(chi.label));
        if (it->second.height_limit < T0)
            throw domain_error("zero list for label " +
                               std::to_string(chi.label) +
                               " stops below the requested T0");
    }

    const double lx = std::log(x);
    auto list_sum = [&](u64 label) {
        cplx sum = 0.0;
        for (double gamma : cat.lists.at(label).gammas) {
            if (gamma > T0) break;
            sum += std::polar(1.0, gamma * lx) / cplx(0.5, gamma);
        }
        return sum;
    };

    cplx zero_part = 0.0;
    for (const auto& chi : g.characters) {
        if (chi.principal) continue;
        const cplx w = std::conj(chi(a)) - std::conj(chi(b));
        const u64 conj_label = inverse_mod(chi.label, g.q);
        zero_part += w * (list_sum(chi.label) + std::conj(list_sum(conj_label)));
    }

    const double sign_k = k % 2 == 0 ? 1.0 : -1.0;
    const double lambda = std::ldexp(1.0, -(k - 1));
    const double dn = static_cast<double>(
        static_cast<i64>(sqrt_count(g.q, a)) -
        static_cast<i64>(sqrt_count(g.q, b)));
    const double constant =
        (flavor == count_flavor::big_omega ? sign_k : 1.0) * lambda * dn /
        static_cast<double>(g.phi);

    const cplx total =
        sign_k / static_cast<double>(g.phi) * zero_part + constant;
    if (std::abs(total.imag()) >= 1e-9)
        throw validation_error(
            "explicit-formula imaginary part fails to cancel; zero catalog "
            "is not conjugate-symmetric");
    return total.real();
}

}  // namespace kprime
