#pragma once

#include "nlds/field.hpp"

namespace nlds {

/// Initial wave function. The stock choice is the Gaussian pair
/// phi1 = exp(-x^2/2), phi2 = exp(-(x-1)^2/2); custom_gaussians places one
/// Gaussian amplitude * exp(-(x - center)^2 / (2 width^2)) per component.
struct InitialSpec {
    enum class Kind { gaussian_pair, custom_gaussians } kind = Kind::gaussian_pair;
    struct Component {
        double amplitude = 1.0;
        double center = 0.0;
        double width = 1.0;
    };
    Component comp1{1.0, 0.0, 1.0};
    Component comp2{1.0, 1.0, 1.0};

    static InitialSpec gaussians() { return {}; }

    void validate() const {
        if (kind == Kind::custom_gaussians && (!(comp1.width > 0.0) || !(comp2.width > 0.0)))
            throw std::invalid_argument("initial: widths must be > 0");
    }
};

inline SpinorField initial_field(const InitialSpec& spec, GridPtr grid) {
    spec.validate();
    SpinorField f(std::move(grid));
    for (int j = 0; j < f.size(); ++j) {
        const double x = f.grid->node(j);
        if (spec.kind == InitialSpec::Kind::gaussian_pair) {
            f.c1[j] = std::exp(-0.5 * x * x);
            f.c2[j] = std::exp(-0.5 * (x - 1.0) * (x - 1.0));
        } else {
            const auto& g1 = spec.comp1;
            const auto& g2 = spec.comp2;
            const double u1 = (x - g1.center) / g1.width;
            const double u2 = (x - g2.center) / g2.width;
            f.c1[j] = g1.amplitude * std::exp(-0.5 * u1 * u1);
            f.c2[j] = g2.amplitude * std::exp(-0.5 * u2 * u2);
        }
    }
    return f;
}

}  // namespace nlds
