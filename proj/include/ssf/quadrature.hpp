#pragma once

#include <vector>

namespace ssf {

struct QuadratureRule {
    std::vector<double> nodes;    // ascending, inside (0, 1)
    std::vector<double> weights;  // sum to 1

    std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Legendre rule mapped to [0, 1].
QuadratureRule gauss_legendre(int n);

}  // namespace ssf
