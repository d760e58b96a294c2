#pragma once

#include <cstdint>
#include <vector>

#include "harmin/harmonic.hpp"
#include "harmin/interpolation.hpp"
#include "harmin/zonotope.hpp"

namespace harmin {

// Law of a random vector Y as atoms with probabilities. Atoms are kept in
// lexicographic order so all downstream summations are reproducible.
struct DiscreteDistribution {
    int dim = 0;
    std::vector<Vec> atoms;
    std::vector<double> probs;
};

// Sorts atoms lexicographically, merges atoms coincident within 1e-12 and
// checks normalization.
DiscreteDistribution canonical_distribution(int dim, std::vector<Vec> atoms, std::vector<double> probs);

struct BoundaryDistributionFamily {
    MeshPtr mesh;
    std::vector<DiscreteDistribution> distributions;  // one per node
    double lipschitz = 0.0;
};

void validate_distribution_family(const BoundaryDistributionFamily& f);

// Z(Y): base 0, generators probs[i] * atoms[i]; zero-probability atoms drop.
Zonotope vitale_zonoid(const DiscreteDistribution& nu);

// Expected |det| of an n-by-n matrix with iid columns drawn from nu, by full
// enumeration of ordered atom tuples. Guard: |atoms|^n <= 1e8, n <= 4.
// Deliberately independent of the zonoid subset-sum route.
double ead_exact(const DiscreteDistribution& nu);

// n! * |Z(Y)|; must match ead_exact to 1e-10 relative for discrete laws.
double ead_zonoid(const DiscreteDistribution& nu);

struct MonteCarloEstimate {
    double estimate = 0.0;
    double stderr_ = 0.0;
};

MonteCarloEstimate ead_monte_carlo(const DiscreteDistribution& nu, std::int64_t trials, std::uint64_t seed);

// Harmonic mixture of the node laws at x.
DiscreteDistribution interpolate_distribution(const BoundaryDistributionFamily& f, const DomainPtr& d,
                                              const Vec& x, const WosConfig& cfg = {});

struct EadRecord {
    Vec x;
    double ead = 0.0;
    double ead_root = 0.0;
    double deficit = 0.0;
};

struct RandomDetReport {
    std::vector<EadRecord> records;
    double min_deficit = 0.0;
    double max_abs_deficit = 0.0;
};

// deficit(x) = ead(x)^{1/n} - avg over K sphere points; exact zonoid route.
RandomDetReport random_det_superharmonicity_report(const BoundaryDistributionFamily& f, const DomainPtr& d,
                                                   const std::vector<Vec>& points, double eps, int k,
                                                   const WosConfig& cfg = {});

}  // namespace harmin
