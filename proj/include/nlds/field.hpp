#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nlds/grid.hpp"

namespace nlds {

using cplx = std::complex<double>;

/// Two-component complex field sampled at the grid nodes (physical space).
struct SpinorField {
    GridPtr grid;
    std::vector<cplx> c1, c2;  // phi_1(x_j), phi_2(x_j)

    SpinorField() = default;
    explicit SpinorField(GridPtr g)
        : grid(std::move(g)), c1(grid->size()), c2(grid->size()) {}

    int size() const { return grid ? grid->size() : 0; }

    bool all_finite() const {
        for (int j = 0; j < size(); ++j)
            if (!std::isfinite(c1[j].real()) || !std::isfinite(c1[j].imag()) ||
                !std::isfinite(c2[j].real()) || !std::isfinite(c2[j].imag()))
                return false;
        return true;
    }
};

/// Fourier coefficients of a SpinorField, FFT storage order (see Grid).
/// Normalization: hat(Phi)_l = (1/M) sum_j Phi_j exp(-i mu_l (x_j - a)).
struct SpectralField {
    GridPtr grid;
    std::vector<cplx> c1, c2;

    SpectralField() = default;
    explicit SpectralField(GridPtr g)
        : grid(std::move(g)), c1(grid->size()), c2(grid->size()) {}

    int size() const { return grid ? grid->size() : 0; }

    cplx coeff1(int l) const { return c1[grid->storage_index(l)]; }
    cplx coeff2(int l) const { return c2[grid->storage_index(l)]; }
};

inline void require_same_grid(const GridPtr& x, const GridPtr& y) {
    if (!same_grid(x, y)) throw std::invalid_argument("grid mismatch");
}

/// Discrete L2 norm: sqrt(h sum_j |Phi_j|^2).
inline double l2_norm(const SpinorField& f) {
    double acc = 0.0;
    for (int j = 0; j < f.size(); ++j) acc += std::norm(f.c1[j]) + std::norm(f.c2[j]);
    return std::sqrt(f.grid->spacing() * acc);
}

/// Spectral-side L2 norm: sqrt((b-a) sum_l |hat(Phi)_l|^2). Equals l2_norm of
/// the physical field by Parseval.
inline double l2_norm(const SpectralField& g) {
    double acc = 0.0;
    for (int l = 0; l < g.size(); ++l) acc += std::norm(g.c1[l]) + std::norm(g.c2[l]);
    return std::sqrt(g.grid->length() * acc);
}

inline double l2_distance(const SpinorField& f, const SpinorField& g) {
    require_same_grid(f.grid, g.grid);
    double acc = 0.0;
    for (int j = 0; j < f.size(); ++j)
        acc += std::norm(f.c1[j] - g.c1[j]) + std::norm(f.c2[j] - g.c2[j]);
    return std::sqrt(f.grid->spacing() * acc);
}

}  // namespace nlds
