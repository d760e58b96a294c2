#pragma once

#include <vector>

#include "harmin/support_body.hpp"
#include "harmin/vec.hpp"

namespace harmin {

// Vertex-represented convex body, n in {2, 3}. Canonical form stores extreme
// points only; in n = 2 they are ordered counterclockwise.
struct Polytope {
    int dim = 0;
    std::vector<Vec> vertices;
};

// Extreme points of the convex hull. n = 2: counterclockwise order;
// n = 3: lexicographic order. Degenerate inputs may yield < n+1 vertices.
Polytope canonical_polytope(int dim, const std::vector<Vec>& points);

// values[k] = max over vertices of v . xi_k
SupportBody support_of_polytope(const Polytope& p, const GridPtr& grid);

double support_of_polytope(const Polytope& p, const Vec& xi);

// n = 2: shoelace on the hull; n = 3: signed tetrahedra of hull faces against
// the centroid. Degenerate bodies return 0.
double volume_polytope(const Polytope& p);

// Volume-weighted centroid; degenerate bodies fall back to the vertex mean.
Vec centroid_polytope(const Polytope& p);

// Outward-oriented triangular faces of the 3d convex hull (index triples).
// Empty when the points are affinely dependent.
std::vector<std::array<int, 3>> convex_hull_3d(const std::vector<Vec>& points);

}  // namespace harmin
