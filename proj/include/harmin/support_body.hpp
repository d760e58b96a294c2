#pragma once

#include <vector>

#include "harmin/direction_grid.hpp"
#include "harmin/vec.hpp"

namespace harmin {

// Convex body represented by support-function samples h_A(xi_k) on a grid.
struct SupportBody {
    GridPtr grid;
    std::vector<double> values;

    SupportBody() = default;
    SupportBody(GridPtr g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {}
};

// Pointwise weighted sum of support values: realizes Minkowski sums, scalings
// and finite Minkowski integrals against atomic measures. Summation is
// left-to-right in the order given.
SupportBody minkowski_combine(const std::vector<SupportBody>& bodies, const std::vector<double>& weights);

// Grid-discretized Hausdorff distance: sup-norm of support differences.
double hausdorff_distance(const SupportBody& a, const SupportBody& b);

// Containment of the grid-reconstructed bodies: h_A >= h_B - 1e-9 pointwise.
bool contains(const SupportBody& a, const SupportBody& b);

}  // namespace harmin
