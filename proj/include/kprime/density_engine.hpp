#pragma once

#include <limits>
#include <unordered_map>
#include <vector>

#include "kprime/characters.hpp"
#include "kprime/flavor.hpp"
#include "kprime/zero_catalog.hpp"

namespace kprime {

/// One Bessel factor of the kernel Phi: J0(amplitude * x / sqrt(1/4 + gamma^2)).
struct bias_factor {
    double amplitude = 0.0;  // 2 |chi(a) - chi(b)|
    double gamma = 0.0;      // positive critical-line ordinate
};

/// Everything the density integrals need about a race (q; a, b): the
/// Bessel factors from all catalogued zeros of all non-principal
/// characters, the square-root count difference, and per-character data
/// for modeling zeros above the catalogue's height.
struct bias_profile {
    u64 q = 0;
    u64 phi_q = 0;
    u64 a = 0, b = 0;
    i64 mean_count_diff = 0;                 // N(q,a) - N(q,b)
    u64 real_char_count = 0;                 // A(q)
    double height_limit = 0.0;               // factors cover (0, height_limit]
    std::vector<bias_factor> factors;        // gamma ascending
    // (amplitude, conductor) per non-principal character, for tail sums
    std::vector<std::pair<double, u64>> tail_terms;
};

enum class cutoff_mode { automatic, fixed };

struct quadrature_config {
    double panel_tolerance = 1e-9;  // must lie in (0, 1e-3]
    cutoff_mode mode = cutoff_mode::automatic;
    double fixed_cutoff = 0.0;      // upper integration limit when fixed
    bool tail_correction = true;
};

struct density_result {
    double value = 0.0;          // the logarithmic density, in (0, 1)
    double integral_part = 0.0;  // 2 * oscillatory integral over (0, inf)
    double est_error = 0.0;      // quadrature + cutoff + tail-toggle bound
    double lambda_k = 0.0;       // 1 / 2^{k-1}
};

struct moment_result {
    double value = 0.0;  // C_j = integral over the whole line of x^{2j} Phi
    double est_error = 0.0;
};

struct variance_result {
    double value = 0.0;  // includes the tail estimate
    double tail = 0.0;   // the tail estimate alone
};

/// Gathers the Bessel factors for the race (q; a, b) from a validated
/// catalog, using zeros up to height_limit (clipped to what the lists
/// hold). Requires gcd(a, q) = gcd(b, q) = 1 and a validated catalog.
bias_profile build_profile(
    const character_group& g, const zero_catalog& cat, u64 a, u64 b,
    double height_limit = std::numeric_limits<double>::infinity());

/// The kernel: product of J0(amplitude x / sqrt(1/4 + gamma^2)) over the
/// profile's factors; with tail_correction, multiplied by the Gaussian
/// exp(-x^2 s) modeling all zeros above the profile's height limit via
/// the smooth zero-counting density.
double phi(const bias_profile& p, double x, bool tail_correction);

/// Shared evaluation context for one profile: memoizes the Bessel
/// product so the 20 density calls and 7 moment calls of a table reuse
/// each other's kernel evaluations. Not safe for concurrent use.
class density_session {
  public:
    explicit density_session(bias_profile p) : profile_(std::move(p)) {}
    const bias_profile& profile() const { return profile_; }

    /// Logarithmic density delta for products of k primes:
    ///   1/2 + sigma * (1/2pi) * Integral sin(lambda_k dN x)/x Phi(x) dx
    /// over the whole line, sigma = (-1)^k for big_omega and +1 for
    /// omega, dN = N(q,a) - N(q,b). Exactly 1/2 when dN = 0.
    density_result density(count_flavor flavor, int k,
                           const quadrature_config& cfg);

    /// 2j-th moment C_j of Phi over the whole line, j <= 6. Rejects
    /// profiles with a = b (Phi does not decay).
    moment_result moment(int j, const quadrature_config& cfg);

  private:
    double raw_phi(double x);  // memoized Bessel product, no tail factor
    double tail_exponent() const;
    double pick_cutoff(const quadrature_config& cfg);

    bias_profile profile_;
    std::vector<double> freqs_;  // factor amplitudes / sqrt(1/4 + gamma^2)
    std::unordered_map<u64, double> cache_;
};

/// One-shot wrappers over density_session.
density_result density(count_flavor flavor, int k, const bias_profile& p,
                       const quadrature_config& cfg);
moment_result moment(const bias_profile& p, int j,
                     const quadrature_config& cfg);

/// V(q; a, b) = sum over characters of |chi(b) - chi(a)|^2 sum over all
/// zeros (both signs) of 1/(1/4 + gamma^2), catalog zeros plus a
/// smooth-density tail estimate (also reported separately).
variance_result variance(const character_group& g, const zero_catalog& cat,
                         u64 a, u64 b);

/// Large-k density expansion in the moments:
///   1/2 +- (1/2pi) sum_{j=0}^{K} lambda_k^{2j+1} (-1)^j A^{2j+1} C_j/(2j+1)!
/// with + and the factor (-1)^{k-1} for big_omega, - for omega; A is the
/// real-character count (the statement's a-nonresidue, b-residue form).
double asymptotic_density(count_flavor flavor, int k, int K,
                          const std::vector<double>& moments, u64 A);

/// Truncated explicit-formula prediction of the normalized race value
/// (k-1)! log x Delta / (sqrt x (loglog x)^{k-1}):
///   (-1)^k/phi(q) sum_{chi != chi0} (conj chi(a) - conj chi(b))
///       sum_{|gamma| <= T0} x^{i gamma}/(1/2 + i gamma)  +  constant,
/// constant = (-1)^k dN/(2^{k-1} phi(q)) for big_omega and
/// dN/(2^{k-1} phi(q)) for omega. Negative ordinates come from the
/// conjugate character's list; the imaginary part must cancel below
/// 1e-9 or validation_error is raised.
double predict_delta(count_flavor flavor, int k, const character_group& g,
                     const zero_catalog& cat, u64 a, u64 b, double T0,
                     double x);

}  // namespace kprime
