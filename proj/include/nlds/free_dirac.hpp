#pragma once

#include <cmath>

#include "nlds/field.hpp"

namespace nlds {

/// 2x2 complex matrix, row major. Small enough to pass by value.
struct Mat2c {
    cplx m00, m01, m10, m11;
};

/// Fourier symbol of the free Dirac operator -i eps sigma1 d/dx + sigma3 at
/// frequency mu: sigma3 + eps*mu*sigma1. Hermitian with eigenvalues
/// +-sqrt(1 + eps^2 mu^2).
inline Mat2c dirac_symbol(double mu, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("dirac_symbol: eps must be > 0");
    const double em = eps * mu;
    return {cplx(1.0, 0.0), cplx(em, 0.0), cplx(em, 0.0), cplx(-1.0, 0.0)};
}

/// sqrt(1 + eps^2 mu^2): the positive eigenvalue of the symbol.
inline double symbol_gap(double mu, double eps) {
    const double em = eps * mu;
    return std::sqrt(1.0 + em * em);
}

namespace detail {

// Forward transform -> per-mode update on both components -> inverse,
// with the 1/M normalization folded into the mode loop. Op signature:
// op(mu, u, v) mutating the coefficients in place (pre-scaled by 1/M).
template <typename Op>
SpinorField per_mode_apply(const SpinorField& f, Op&& op) {
    if (!f.grid) throw std::invalid_argument("per_mode_apply: empty field");
    const int m = f.size();
    const Grid& grid = *f.grid;
    SpinorField out(f.grid);
    auto [s1, s2] = thread_scratch(m);
    std::copy_n(f.c1.data(), m, s1);
    std::copy_n(f.c2.data(), m, s2);
    grid.plans().forward(s1);
    grid.plans().forward(s2);
    const double inv_m = 1.0 / m;
    for (int i = 0; i < m; ++i) {
        cplx u = s1[i] * inv_m;
        cplx v = s2[i] * inv_m;
        op(grid.freq_at(i), u, v);
        s1[i] = u;
        s2[i] = v;
    }
    grid.plans().backward(s1);
    grid.plans().backward(s2);
    std::copy_n(s1, m, out.c1.data());
    std::copy_n(s2, m, out.c2.data());
    return out;
}

}  // namespace detail

/// exp(i t Q^eps / eps^2): per mode the unitary
///   cos(t d / eps^2) I + i sin(t d / eps^2)/d * symbol,   d = symbol_gap,
/// using symbol^2 = d^2 I. The time-splitting steppers call this with t = -tau.
/// Unitary, so the discrete L2 norm is preserved.
inline SpinorField free_flow(const SpinorField& f, double t, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("free_flow: eps must be > 0");
    const double theta = t / (eps * eps);
    return detail::per_mode_apply(f, [eps, theta](double mu, cplx& u, cplx& v) {
        const double em = eps * mu;
        const double d = std::sqrt(1.0 + em * em);
        const double c = std::cos(theta * d);
        const double s = std::sin(theta * d) / d;  // d >= 1, never singular
        const cplx is(0.0, s);
        const cplx u2 = c * u + is * (u + em * v);
        const cplx v2 = c * v + is * (em * u - v);
        u = u2;
        v = v2;
    });
}

enum class Branch { plus, minus };

/// Energy-branch projector Pi_pm = (1/2)[Id +- (Id - eps^2 Lap)^(-1/2) Q^eps]:
/// per mode (1/2)(I +- symbol/d). Resolution of identity and idempotence hold
/// mode by mode.
inline SpinorField projector(const SpinorField& f, Branch sign, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("projector: eps must be > 0");
    const double s = (sign == Branch::plus) ? 1.0 : -1.0;
    return detail::per_mode_apply(f, [eps, s](double mu, cplx& u, cplx& v) {
        const double em = eps * mu;
        const double d = std::sqrt(1.0 + em * em);
        const cplx u2 = 0.5 * (u + s * (u + em * v) / d);
        const cplx v2 = 0.5 * (v + s * (em * u - v) / d);
        u = u2;
        v = v2;
    });
}

/// exp(i t D^eps) with D^eps = (sqrt(Id - eps^2 Lap) - Id)/eps^2: scalar phase
/// e^{i t d_l} per mode, d_l = mu^2 / (symbol_gap + 1) (the eps-stable form).
/// Together with the projectors this realizes the decomposition
///   e^{i t Q/eps^2} = e^{i t/eps^2} e^{i t D} Pi_+ + e^{-i t/eps^2} e^{-i t D} Pi_-.
inline SpinorField dsemigroup(const SpinorField& f, double t, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("dsemigroup: eps must be > 0");
    return detail::per_mode_apply(f, [eps, t](double mu, cplx& u, cplx& v) {
        const double em = eps * mu;
        const double d = std::sqrt(1.0 + em * em);
        const double phase = t * (mu * mu / (d + 1.0));
        const cplx w(std::cos(phase), std::sin(phase));
        u *= w;
        v *= w;
    });
}

}  // namespace nlds
