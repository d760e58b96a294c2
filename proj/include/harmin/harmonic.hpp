#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "harmin/vec.hpp"

namespace harmin {

// Parameter domain Omega in R^m, m in {1, 2, 3}. Balls get closed-form
// kernels; general smooth domains (m = 2) are described by a signed distance
// (negative inside) and a boundary parametrization over [0, 1).
struct Domain {
    enum class Kind { ball, general };
    int m = 0;
    Kind kind = Kind::ball;
    Vec center;
    double radius = 0.0;
    std::function<double(const Vec&)> signed_distance;
    std::function<Vec(double)> boundary_param;
};

using DomainPtr = std::shared_ptr<const Domain>;

DomainPtr make_ball(int m, Vec center, double radius);
DomainPtr make_general_2d(std::function<double(const Vec&)> signed_distance,
                          std::function<Vec(double)> boundary_param);

bool is_interior(const Domain& d, const Vec& x);
double boundary_distance(const Domain& d, const Vec& x);

// Boundary nodes with normalized surface-measure weights.
struct BoundaryMesh {
    DomainPtr domain;
    std::vector<Vec> nodes;
    std::vector<double> arc_weights;  // nonnegative, sum 1

    int count() const { return static_cast<int>(nodes.size()); }
};

using MeshPtr = std::shared_ptr<const BoundaryMesh>;

// m = 1: the two endpoints; m = 2: uniform angles / parameters;
// m = 3 ball: symmetrized deterministic sphere points.
MeshPtr make_boundary_mesh(const DomainPtr& domain, int count);

// Discretized harmonic measure: nonnegative node weights summing to 1.
struct HarmonicMeasure {
    MeshPtr mesh;
    std::vector<double> weights;
};

void validate_measure(const HarmonicMeasure& mu);

// Closed-form kernel for balls: w_j proportional to
// arc_w_j * (r^2 - |x-c|^2) / |x - tau_j|^m, renormalized.
HarmonicMeasure poisson_weights(const DomainPtr& domain, const Vec& x, const MeshPtr& mesh);

// Walk-on-spheres estimate of the harmonic measure; one splittable stream per
// trial index, so results do not depend on evaluation order.
// Throws GuardError when a walk exceeds the 1e6 step budget.
HarmonicMeasure wos_measure(const DomainPtr& domain, const Vec& x, const MeshPtr& mesh,
                            std::int64_t trials, double shell, std::uint64_t seed);

struct WosConfig {
    std::int64_t trials = 0;  // 0 = closed form only
    double shell = 1e-4;
    std::uint64_t seed = 0;
};

// poisson_weights for balls, wos_measure otherwise (cfg.trials must be > 0).
HarmonicMeasure measure_at(const DomainPtr& domain, const Vec& x, const MeshPtr& mesh,
                           const WosConfig& cfg = {});

// K quadrature points on the sphere of radius eps about x.
std::vector<Vec> sphere_points(const Vec& x, double eps, int k);

// Total-variation distance between mu_x and the uniform average of mu_y over
// K points y on the eps-sphere about x.
double mean_value_residual(const DomainPtr& domain, const Vec& x, double eps, const MeshPtr& mesh,
                           int k, const WosConfig& cfg = {});

double harmonic_extension(const HarmonicMeasure& mu, const std::vector<double>& boundary_values);
double harmonic_extension(const DomainPtr& domain, const MeshPtr& mesh,
                          const std::vector<double>& boundary_values, const Vec& x,
                          const WosConfig& cfg = {});

double total_variation(const std::vector<double>& p, const std::vector<double>& q);

}  // namespace harmin
