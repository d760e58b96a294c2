#pragma once

#include <memory>
#include <vector>

#include "harmin/vec.hpp"

namespace harmin {

// Centrally symmetric set of unit directions with normalized quadrature
// weights; the sampling lattice for support functions.
struct DirectionGrid {
    int dim = 0;
    std::vector<Vec> directions;       // unit vectors
    std::vector<double> quad_weights;  // nonnegative, sum 1
    std::vector<int> antipode;         // directions[antipode[k]] == -directions[k]

    int count() const { return static_cast<int>(directions.size()); }
};

using GridPtr = std::shared_ptr<const DirectionGrid>;

// n = 2: uniform angles, exactly symmetric by negation. n in {3, 4}: a
// deterministic Halton-driven point set, symmetrized by appending antipodes.
// Weights are uniform. count must be even and >= 2n.
GridPtr make_direction_grid(int n, int count);

// Checks unit norms, central symmetry and weight normalization.
void validate_grid(const DirectionGrid& grid);

bool same_grid(const GridPtr& a, const GridPtr& b);

// Deterministic well-spread unit vectors in R^n (no symmetrization); used for
// sphere quadrature points as well as grid construction.
std::vector<Vec> low_discrepancy_sphere(int n, int count);

}  // namespace harmin
