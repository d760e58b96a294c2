#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "harmin/harmonic.hpp"
#include "harmin/polytope.hpp"
#include "harmin/reconstruct.hpp"
#include "harmin/support_body.hpp"
#include "harmin/zonotope.hpp"

namespace harmin {

// Continuous family of convex bodies over the boundary mesh, one body per
// node, all sampled on a single grid. Zonotope / polytope representations are
// carried alongside when the family has them exactly.
struct BoundaryBodyFamily {
    MeshPtr mesh;
    GridPtr grid;
    std::vector<SupportBody> bodies;
    std::vector<Zonotope> zonotopes;     // empty or one per node
    std::vector<Polytope> polytopes;     // empty or one per node
    double lipschitz = 0.0;              // declared continuity constant L

    bool has_zonotopes() const { return !zonotopes.empty(); }
    bool has_polytopes() const { return !polytopes.empty(); }
};

BoundaryBodyFamily make_family(const MeshPtr& mesh, const GridPtr& grid,
                               const std::function<SupportBody(double, const Vec&)>& body_at,
                               double lipschitz);
BoundaryBodyFamily make_zonotope_family(const MeshPtr& mesh, const GridPtr& grid,
                                        const std::function<Zonotope(double, const Vec&)>& zonotope_at,
                                        double lipschitz);
BoundaryBodyFamily make_polytope_family(const MeshPtr& mesh, const GridPtr& grid,
                                        const std::function<Polytope(double, const Vec&)>& polytope_at,
                                        double lipschitz);

// Adjacent-node Hausdorff distances must stay below L * node spacing.
// Violation is a validation error, not silent.
void validate_family(const BoundaryBodyFamily& f);

// values[k] = sum_j mu_j h_{A_j}(xi_k); the finite-sum Minkowski integral.
SupportBody minkowski_integral(const BoundaryBodyFamily& f, const HarmonicMeasure& mu);

// Exact zonoid route: weighted base, concatenated scaled generators. Sampled
// support equals the minkowski_integral output.
Zonotope zonotope_integral(const BoundaryBodyFamily& f, const HarmonicMeasure& mu);

SupportBody harmonic_interpolation(const BoundaryBodyFamily& f, const DomainPtr& d, const Vec& x,
                                   const WosConfig& cfg = {});

// Fiber over x of the convex hull of the lifted boundary bodies; one linear
// program per grid direction over convex-combination coefficients.
SupportBody convex_interpolation_fiber(const BoundaryBodyFamily& f, const DomainPtr& d, const Vec& x);

struct SubharmonicReport {
    double max_violation = 0.0;  // max over directions of h_avg - h_at_x
};

SubharmonicReport subharmonic_check(const std::function<SupportBody(const Vec&)>& family_at,
                                    const Vec& x, double eps, int k);

struct DeficitRecord {
    Vec x;
    double volume = 0.0;
    double root_volume = 0.0;
    double deficit = 0.0;  // root_volume - mean of sphere root volumes
};

struct SuperharmonicityReport {
    std::vector<DeficitRecord> records;
    double min_deficit = 0.0;
};

// deficit(x) = |A_x|^{1/n} - avg over K sphere points y of |A_y|^{1/n};
// the mean-value form of the superharmonicity statement.
SuperharmonicityReport superharmonicity_report(const BoundaryBodyFamily& f, const DomainPtr& d,
                                               const std::vector<Vec>& points, double eps, int k,
                                               const WosConfig& cfg = {});

// Best fit h_A ~ c h_B + d . xi against a fixed reference body B of volume 1
// centered at the origin.
struct HomothetyFit {
    SupportBody reference;       // B, |B| = 1, centroid 0
    std::vector<double> c;       // one per evaluation point
    std::vector<Vec> d;          // one per evaluation point
    std::vector<double> point_residual;
    double residual = 0.0;       // max over points and directions
};

HomothetyFit homothety_fit(const std::vector<SupportBody>& bodies);

struct EqualityCaseRecord {
    Vec x;
    double root_volume = 0.0;
    double deficit = 0.0;
    double fit_residual = 0.0;
    double c = 0.0;
    double c_extension_gap = 0.0;  // |c_x - harmonic extension of boundary c|
};

struct EqualityCaseReport {
    std::vector<EqualityCaseRecord> records;
    double harmonicity_defect = 0.0;  // max |deficit|
    double fit_residual = 0.0;        // max over points and directions
    double max_c_extension_gap = 0.0;
};

// Both directions of the equality characterization at desk scale: mean-value
// defect of |A_x|^{1/n}, homothety residual, and agreement of the fitted c_x
// with the harmonic extension of the fitted boundary c.
EqualityCaseReport equality_case_check(const BoundaryBodyFamily& f, const DomainPtr& d,
                                       const std::vector<Vec>& points, double eps, int k,
                                       const WosConfig& cfg = {});

}  // namespace harmin
