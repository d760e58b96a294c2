#pragma once

#include <vector>

#include "harmin/support_body.hpp"
#include "harmin/vec.hpp"

namespace harmin {

// Base point plus generator list; exact closed form for bodies built as
// Minkowski sums of segments base + sum_i [0, g_i].
struct Zonotope {
    int dim = 0;
    Vec base;
    std::vector<Vec> generators;
};

// h_Z(xi) = base . xi + sum_i max(0, g_i . xi)
double support_of_zonotope(const Zonotope& z, const Vec& xi);

SupportBody sample_support(const Zonotope& z, const GridPtr& grid);

// Number of n-element generator subsets, saturating; used by the volume guard.
double subset_count(int n_generators, int dim);

// Exact volume: sum over all dim-element generator subsets of |det|.
// Lexicographic non-recursive iteration; cost C(N, n) determinants.
// Guard rejects C(N, n) > 1e8 and dim > 4.
double volume_zonotope(const Zonotope& z);

}  // namespace harmin
