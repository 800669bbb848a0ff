#pragma once

#include <algorithm>
#include <cstring>

#include "nlds/field.hpp"

namespace nlds {

/// hat(Phi)_l = (1/M) sum_j Phi_j exp(-i mu_l (x_j - a)).
/// mu_l (x_j - a) = 2 pi l j / M, so this is the plain DFT scaled by 1/M.
inline SpectralField forward_transform(const SpinorField& f) {
    if (!f.grid) throw std::invalid_argument("forward_transform: empty field");
    const int m = f.size();
    SpectralField out(f.grid);
    auto [s1, s2] = detail::thread_scratch(m);
    std::copy_n(f.c1.data(), m, s1);
    std::copy_n(f.c2.data(), m, s2);
    f.grid->plans().forward(s1);
    f.grid->plans().forward(s2);
    const double inv_m = 1.0 / m;
    for (int i = 0; i < m; ++i) {
        out.c1[i] = s1[i] * inv_m;
        out.c2[i] = s2[i] * inv_m;
    }
    return out;
}

/// Phi_j = sum_l hat(Phi)_l exp(i mu_l (x_j - a)); exact inverse of the above.
inline SpinorField inverse_transform(const SpectralField& g) {
    if (!g.grid) throw std::invalid_argument("inverse_transform: empty field");
    const int m = g.size();
    SpinorField out(g.grid);
    auto [s1, s2] = detail::thread_scratch(m);
    std::copy_n(g.c1.data(), m, s1);
    std::copy_n(g.c2.data(), m, s2);
    g.grid->plans().backward(s1);
    g.grid->plans().backward(s2);
    std::copy_n(s1, m, out.c1.data());
    std::copy_n(s2, m, out.c2.data());
    return out;
}

/// (Phi')_j = i sum_l mu_l hat(Phi)_l exp(i mu_l (x_j - a)), summed over the
/// full index set l = -M/2 .. M/2-1. The unpaired Nyquist mode l = -M/2 is
/// kept by default; zero_nyquist drops it for callers that want a symmetric
/// differentiation stencil.
inline SpinorField spectral_derivative(const SpinorField& f, bool zero_nyquist = false) {
    if (!f.grid) throw std::invalid_argument("spectral_derivative: empty field");
    const int m = f.size();
    const Grid& grid = *f.grid;
    SpinorField out(f.grid);
    auto [s1, s2] = detail::thread_scratch(m);
    std::copy_n(f.c1.data(), m, s1);
    std::copy_n(f.c2.data(), m, s2);
    grid.plans().forward(s1);
    grid.plans().forward(s2);
    const double inv_m = 1.0 / m;
    for (int i = 0; i < m; ++i) {
        const cplx factor(0.0, grid.freq_at(i) * inv_m);
        s1[i] *= factor;
        s2[i] *= factor;
    }
    if (zero_nyquist) {
        s1[m / 2] = 0.0;
        s2[m / 2] = 0.0;
    }
    grid.plans().backward(s1);
    grid.plans().backward(s2);
    std::copy_n(s1, m, out.c1.data());
    std::copy_n(s2, m, out.c2.data());
    return out;
}

}  // namespace nlds
