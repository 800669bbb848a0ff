#pragma once

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "nlds/fft_backend.hpp"

namespace nlds {

/// Uniform periodic grid on (a, b) with M points x_j = a + j h and Fourier
/// frequencies mu_l = 2 pi l / (b - a), l = -M/2 .. M/2 - 1.
///
/// Spectral coefficients are stored in FFT order: index 0..M/2-1 holds
/// l = 0..M/2-1, index M/2..M-1 holds l = -M/2..-1. freq[i] is the mu of the
/// coefficient stored at i; the single Nyquist frequency l = -M/2 sits at
/// storage index M/2.
class Grid {
public:
    Grid(double a, double b, int m)
        : a_(a), b_(b), m_(m), h_((b - a) / m), plans_(std::make_shared<detail::fft_plans>(m)) {
        node_.resize(m);
        freq_.resize(m);
        const double two_pi = 2.0 * std::numbers::pi;
        for (int j = 0; j < m; ++j) node_[j] = a + j * h_;
        for (int i = 0; i < m; ++i) {
            const int l = (i < m / 2) ? i : i - m;
            freq_[i] = two_pi * l / (b - a);
        }
    }

    double a() const { return a_; }
    double b() const { return b_; }
    double length() const { return b_ - a_; }
    int size() const { return m_; }
    double spacing() const { return h_; }

    double node(int j) const { return node_[j]; }
    const std::vector<double>& nodes() const { return node_; }

    /// mu at storage index i (FFT order).
    double freq_at(int i) const { return freq_[i]; }
    const std::vector<double>& freqs() const { return freq_; }

    /// mu_l by logical index l in [-M/2, M/2-1].
    double freq(int l) const { return freq_[storage_index(l)]; }

    /// Storage slot of logical mode l.
    int storage_index(int l) const {
        if (l < -m_ / 2 || l >= m_ / 2)
            throw std::out_of_range("mode index outside [-M/2, M/2-1]");
        return l >= 0 ? l : l + m_;
    }

    const detail::fft_plans& plans() const { return *plans_; }

    friend bool operator==(const Grid& x, const Grid& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.m_ == y.m_;
    }

private:
    double a_, b_;
    int m_;
    double h_;
    std::shared_ptr<detail::fft_plans> plans_;
    std::vector<double> node_;
    std::vector<double> freq_;
};

using GridPtr = std::shared_ptr<const Grid>;

inline GridPtr make_grid(double a, double b, int m) {
    if (!(b > a)) throw std::invalid_argument("grid: require b > a");
    if (m < 2) throw std::invalid_argument("grid: require M >= 2");
    if (m % 2 != 0) throw std::invalid_argument("grid: require even M");
    return std::make_shared<Grid>(a, b, m);
}

/// Grids are interchangeable when they describe the same domain sampling.
inline bool same_grid(const GridPtr& x, const GridPtr& y) {
    return x == y || (x && y && *x == *y);
}

}  // namespace nlds
