#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nlds {

/// Parameters of the non-resonant step-size set
///   A_delta(eps) = U_k [ 0.5 eps^2 k pi + 0.5 eps^2 asin(delta),
///                        0.5 eps^2 (k+1) pi - 0.5 eps^2 asin(delta) ].
struct ResonanceSpec {
    double eps = 1.0;
    double delta = 0.15;

    void validate() const {
        if (!(eps > 0.0) || eps > 1.0)
            throw std::invalid_argument("resonance: eps must lie in (0, 1]");
        if (!(delta > 0.0) || delta > 1.0)
            throw std::invalid_argument("resonance: delta must lie in (0, 1]");
    }
};

// Intervals are closed; comparisons near endpoints carry a 1e-14 absolute
// guard (in units of 2 tau / eps^2), the one deliberate fuzziness here.
inline constexpr double kEndpointGuard = 1e-14;

/// Membership via the closed predicate |sin(2 tau / eps^2)| >= delta, which is
/// equivalent to interval membership in A_delta(eps).
inline bool is_non_resonant(double tau, const ResonanceSpec& spec) {
    spec.validate();
    if (!(tau > 0.0)) throw std::invalid_argument("is_non_resonant: tau must be > 0");
    return std::abs(std::sin(2.0 * tau / (spec.eps * spec.eps))) >= spec.delta - kEndpointGuard;
}

/// Membership evaluated directly on the interval union (reduction mod pi).
/// Used as the independent cross-check of the sine form.
inline bool is_non_resonant_interval(double tau, const ResonanceSpec& spec) {
    spec.validate();
    if (!(tau > 0.0)) throw std::invalid_argument("is_non_resonant_interval: tau must be > 0");
    const double pi = std::numbers::pi;
    const double r = 2.0 * tau / (spec.eps * spec.eps);
    const double a = std::asin(spec.delta);
    double rmod = std::fmod(r, pi);
    if (rmod < 0.0) rmod += pi;
    return rmod >= a - kEndpointGuard && rmod <= pi - a + kEndpointGuard;
}

/// Index k of the interval family bracket containing 2 tau / eps^2.
inline long interval_index(double tau, const ResonanceSpec& spec) {
    spec.validate();
    return static_cast<long>(std::floor(2.0 * tau / (spec.eps * spec.eps) / std::numbers::pi));
}

/// The resonant family tau = 0.5 k0 eps^2 pi; lands in a gap of A_delta(eps)
/// for every delta > 0.
inline double resonant_step(int k0, double eps) {
    if (k0 < 1) throw std::invalid_argument("resonant_step: k0 must be >= 1");
    if (!(eps > 0.0)) throw std::invalid_argument("resonant_step: eps must be > 0");
    return 0.5 * k0 * eps * eps * std::numbers::pi;
}

/// Member of A_delta(eps) closest to tau_target; ties break toward the larger
/// tau; tau_target itself when already non-resonant.
inline double nearest_non_resonant(double tau_target, const ResonanceSpec& spec) {
    spec.validate();
    if (!(tau_target > 0.0))
        throw std::invalid_argument("nearest_non_resonant: tau must be > 0");
    if (is_non_resonant(tau_target, spec)) return tau_target;

    const double pi = std::numbers::pi;
    const double half_eps2 = 0.5 * spec.eps * spec.eps;
    const double r = 2.0 * tau_target / (spec.eps * spec.eps);
    const double a = std::asin(spec.delta);
    // Nudge past the endpoint by more than the sin argument-reduction error
    // (~ r * ulp(pi)) so the membership postcondition holds in floating point.
    const double margin = 4e-16 * std::max(1.0, r);
    // Gaps sit around the multiples k pi; the k = 0 gap [0, a] has no left exit.
    const double k = std::round(r / pi);
    if (k < 1.0) return half_eps2 * (a + margin);
    const double lo = k * pi - a - margin;
    const double hi = k * pi + a + margin;
    const double r_out = (r - lo < hi - r) ? lo : hi;
    return half_eps2 * r_out;
}

}  // namespace nlds
