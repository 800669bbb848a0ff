#pragma once

#include <optional>
#include <string>

#include "nlds/fourier.hpp"
#include "nlds/schemes.hpp"

namespace nlds {

/// One convergence-table cell. Metrics that were not requested (or whose cell
/// failed) stay empty; order entries are filled in by the experiment driver.
struct ErrorRecord {
    double eps = 0.0;
    double tau = 0.0;
    std::optional<double> h1;
    std::optional<double> l1_density;
    std::optional<double> rel_l1_current;
    std::optional<double> rel_energy;
    std::optional<double> abs_energy;  // diagnostic companion to rel_energy
    std::optional<double> order_h1, order_density, order_current, order_energy;
    std::optional<bool> non_resonant;  // set by non_resonant-rule plans
    bool failed = false;
    std::string message;
};

/// rho_j = |phi1_j|^2 + |phi2_j|^2.
inline std::vector<double> density(const SpinorField& f) {
    std::vector<double> rho(f.size());
    for (int j = 0; j < f.size(); ++j) rho[j] = std::norm(f.c1[j]) + std::norm(f.c2[j]);
    return rho;
}

struct CurrentDensity {
    std::vector<double> j1, j2;  // (1/eps) Phi* sigma_k Phi, k = 1, 2
};

/// J1 = 2 Re(conj(phi1) phi2)/eps, J2 = 2 Im(conj(phi1) phi2)/eps; both real
/// by construction.
inline CurrentDensity current(const SpinorField& f, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("current: eps must be > 0");
    CurrentDensity out{std::vector<double>(f.size()), std::vector<double>(f.size())};
    for (int j = 0; j < f.size(); ++j) {
        const cplx z = std::conj(f.c1[j]) * f.c2[j];
        out.j1[j] = 2.0 * z.real() / eps;
        out.j2[j] = 2.0 * z.imag() / eps;
    }
    return out;
}

/// Discrete energy
///   E = h sum_j [ -(i/eps) Phi* sigma1 Phi' + (1/eps^2) Phi* sigma3 Phi
///                 + V |Phi|^2 + (lambda1/2)(Phi* sigma3 Phi)^2
///                 + (lambda2/2)|Phi|^4 ],
/// with Phi' the spectral derivative. Analytically real; the imaginary
/// residual is asserted below 1e-10 relative and the real part returned.
inline double energy(const SpinorField& f, const PhysicsParams& p, bool zero_nyquist = false) {
    p.validate(f.size());
    const SpinorField df = spectral_derivative(f, zero_nyquist);
    const bool has_v = !p.potential.empty();
    cplx acc = 0.0;
    for (int j = 0; j < f.size(); ++j) {
        const cplx sigma1_term = std::conj(f.c1[j]) * df.c2[j] + std::conj(f.c2[j]) * df.c1[j];
        const double s = std::norm(f.c1[j]) - std::norm(f.c2[j]);
        const double rho = std::norm(f.c1[j]) + std::norm(f.c2[j]);
        const double v = has_v ? p.potential[j] : 0.0;
        acc += cplx(0.0, -1.0 / p.eps) * sigma1_term +
               cplx(s / (p.eps * p.eps) + v * rho + 0.5 * p.lambda1 * s * s +
                        0.5 * p.lambda2 * rho * rho,
                    0.0);
    }
    acc *= f.grid->spacing();
    if (std::abs(acc.imag()) > 1e-10 * std::abs(acc.real()) && std::abs(acc.imag()) > 1e-13)
        throw std::runtime_error("energy: imaginary residual " + std::to_string(acc.imag()) +
                                 " exceeds tolerance (broken derivative or transform?)");
    return acc.real();
}

/// Discrete H1 error sqrt(h sum |num - ref|^2 + h sum |num' - ref'|^2) with
/// spectral derivatives of both arguments.
inline double h1_error(const SpinorField& num, const SpinorField& ref, bool zero_nyquist = false) {
    require_same_grid(num.grid, ref.grid);
    const SpinorField dn = spectral_derivative(num, zero_nyquist);
    const SpinorField dr = spectral_derivative(ref, zero_nyquist);
    double acc = 0.0;
    for (int j = 0; j < num.size(); ++j) {
        acc += std::norm(num.c1[j] - ref.c1[j]) + std::norm(num.c2[j] - ref.c2[j]);
        acc += std::norm(dn.c1[j] - dr.c1[j]) + std::norm(dn.c2[j] - dr.c2[j]);
    }
    return std::sqrt(num.grid->spacing() * acc);
}

/// h-weighted l1 distance of the probability densities.
inline double density_error_l1(const SpinorField& num, const SpinorField& ref) {
    require_same_grid(num.grid, ref.grid);
    const std::vector<double> rn = density(num);
    const std::vector<double> rr = density(ref);
    double acc = 0.0;
    for (int j = 0; j < num.size(); ++j) acc += std::abs(rn[j] - rr[j]);
    return num.grid->spacing() * acc;
}

/// ||J(num) - J(ref)||_l1 / ||J(ref)||_l1, the l1 norm summing |J1| + |J2|
/// with the h weight. Throws if the reference current vanishes.
inline double current_error_rel_l1(const SpinorField& num, const SpinorField& ref, double eps) {
    require_same_grid(num.grid, ref.grid);
    const CurrentDensity jn = current(num, eps);
    const CurrentDensity jr = current(ref, eps);
    double diff = 0.0, denom = 0.0;
    for (int j = 0; j < num.size(); ++j) {
        diff += std::abs(jn.j1[j] - jr.j1[j]) + std::abs(jn.j2[j] - jr.j2[j]);
        denom += std::abs(jr.j1[j]) + std::abs(jr.j2[j]);
    }
    if (denom == 0.0)
        throw std::domain_error("current_error_rel_l1: relative metric undefined (zero reference current)");
    return diff / denom;
}

/// |E(num) - E(ref)| / |E(ref)|. Throws if the reference energy vanishes.
inline double energy_error_rel(const SpinorField& num, const SpinorField& ref,
                               const PhysicsParams& p, bool zero_nyquist = false) {
    const double en = energy(num, p, zero_nyquist);
    const double er = energy(ref, p, zero_nyquist);
    if (er == 0.0)
        throw std::domain_error("energy_error_rel: relative metric undefined (zero reference energy)");
    return std::abs(en - er) / std::abs(er);
}

}  // namespace nlds
