#pragma once

#include <string>
#include <vector>

#include "nlds/expression.hpp"
#include "nlds/grid.hpp"

namespace nlds {

/// Electric potential selector: identically zero, the rational well
/// (x - 1)/(x^2 + 1), or a user expression in x.
struct PotentialSpec {
    enum class Kind { zero, rational_well, expression } kind = Kind::zero;
    std::string expression;

    static PotentialSpec zero() { return {}; }
    static PotentialSpec rational() { return {Kind::rational_well, {}}; }
    static PotentialSpec expr(std::string e) { return {Kind::expression, std::move(e)}; }
};

/// Samples V at the grid nodes. Expression potentials must evaluate to a
/// finite real at every node.
inline std::vector<double> parse_potential(const PotentialSpec& spec, const Grid& grid) {
    std::vector<double> v(grid.size(), 0.0);
    switch (spec.kind) {
        case PotentialSpec::Kind::zero:
            break;
        case PotentialSpec::Kind::rational_well:
            for (int j = 0; j < grid.size(); ++j) {
                const double x = grid.node(j);
                v[j] = (x - 1.0) / (x * x + 1.0);
            }
            break;
        case PotentialSpec::Kind::expression: {
            const Expression e = Expression::parse(spec.expression);
            for (int j = 0; j < grid.size(); ++j) {
                v[j] = e.eval(grid.node(j));
                if (!std::isfinite(v[j]))
                    throw std::invalid_argument(
                        "potential evaluates non-finite at node " + std::to_string(j) +
                        " (x = " + std::to_string(grid.node(j)) + ")");
            }
            break;
        }
    }
    return v;
}

}  // namespace nlds
