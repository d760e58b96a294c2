#pragma once

#include "harmin/polytope.hpp"
#include "harmin/support_body.hpp"

namespace harmin {

// Halfspace intersection over the grid: the polytope {x : x.xi_k <= h_k}.
// n = 2 uses an angular-sweep intersection (directions are sorted by angle)
// with a tolerance-clipping fallback for degenerate bodies; n = 3 clips a
// bounding box by every halfspace. Throws EmptyBodyError / UnboundedBodyError.
Polytope body_from_support(const SupportBody& h);

// Tightens support values to the reconstructed polytope. Explicit, not
// automatic, so raw Minkowski-integral outputs can be inspected.
SupportBody canonicalize(const SupportBody& h);

// Nonemptiness of the halfspace intersection (n <= 3 via reconstruction).
bool is_nonempty(const SupportBody& h);

// Volume of the reconstructed body.
double support_body_volume(const SupportBody& h);

// |A+B|^{1/n} - |A|^{1/n} - |B|^{1/n} via reconstruction; >= -tol with tol at
// reconstruction error scale.
double bm_deficit(const SupportBody& a, const SupportBody& b);

}  // namespace harmin
