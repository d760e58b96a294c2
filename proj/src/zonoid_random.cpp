#include "harmin/zonoid_random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "harmin/errors.hpp"
#include "harmin/rng.hpp"

namespace harmin {

namespace {

bool atoms_coincide(const Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > 1e-12) return false;
    return true;
}

}  // namespace

DiscreteDistribution canonical_distribution(int dim, std::vector<Vec> atoms, std::vector<double> probs) {
    if (atoms.size() != probs.size()) throw std::invalid_argument("distribution: atom/prob count mismatch");
    if (atoms.empty()) throw std::invalid_argument("distribution: empty");
    for (const Vec& a : atoms) require_dim(a, dim, "distribution atom");
    double total = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0)) throw std::invalid_argument("distribution: negative probability");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("distribution: probabilities must sum to 1");

    std::vector<std::size_t> order(atoms.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return atoms[a] < atoms[b]; });

    DiscreteDistribution out;
    out.dim = dim;
    for (std::size_t i : order) {
        if (!out.atoms.empty() && atoms_coincide(out.atoms.back(), atoms[i])) {
            out.probs.back() += probs[i];
        } else {
            out.atoms.push_back(atoms[i]);
            out.probs.push_back(probs[i]);
        }
    }
    return out;
}

void validate_distribution_family(const BoundaryDistributionFamily& f) {
    if (!f.mesh) throw std::invalid_argument("distribution family: missing mesh");
    if (static_cast<int>(f.distributions.size()) != f.mesh->count())
        throw std::invalid_argument("distribution family: one distribution per node required");
    const int dim = f.distributions.front().dim;
    for (const auto& nu : f.distributions)
        if (nu.dim != dim) throw std::invalid_argument("distribution family: mixed dimensions");
}

Zonotope vitale_zonoid(const DiscreteDistribution& nu) {
    Zonotope z;
    z.dim = nu.dim;
    z.base.assign(nu.dim, 0.0);
    for (std::size_t i = 0; i < nu.atoms.size(); ++i) {
        if (nu.probs[i] == 0.0) continue;
        z.generators.push_back(scaled(nu.atoms[i], nu.probs[i]));
    }
    return z;
}

double ead_exact(const DiscreteDistribution& nu) {
    const int n = nu.dim;
    const int m = static_cast<int>(nu.atoms.size());
    if (n > 4) throw GuardError("ead_exact: dim > 4 not supported");
    const double tuples = std::pow(static_cast<double>(m), n);
    if (tuples > 1e8) throw GuardError("ead_exact: |atoms|^n exceeds 1e8");

    std::vector<int> idx(n, 0);
    std::vector<Vec> cols(n);
    double acc = 0.0;
    while (true) {
        double p = 1.0;
        for (int i = 0; i < n; ++i) p *= nu.probs[idx[i]];
        if (p != 0.0) {
            for (int i = 0; i < n; ++i) cols[i] = nu.atoms[idx[i]];
            acc += p * std::abs(det_columns(cols));
        }
        int i = n - 1;
        while (i >= 0 && idx[i] == m - 1) idx[i--] = 0;
        if (i < 0) break;
        ++idx[i];
    }
    return acc;
}

double ead_zonoid(const DiscreteDistribution& nu) {
    double fact = 1.0;
    for (int i = 2; i <= nu.dim; ++i) fact *= static_cast<double>(i);
    return fact * volume_zonotope(vitale_zonoid(nu));
}

MonteCarloEstimate ead_monte_carlo(const DiscreteDistribution& nu, std::int64_t trials, std::uint64_t seed) {
    if (trials < 100) throw std::invalid_argument("ead_monte_carlo: trials must be >= 100");
    const int n = nu.dim;
    std::vector<double> cdf(nu.probs.size());
    double run = 0.0;
    for (std::size_t i = 0; i < nu.probs.size(); ++i) {
        run += nu.probs[i];
        cdf[i] = run;
    }
    cdf.back() = 1.0;

    double sum = 0.0, sumsq = 0.0;
    std::vector<Vec> cols(n);
    for (std::int64_t t = 0; t < trials; ++t) {
        Rng rng(seed, static_cast<std::uint64_t>(t));
        for (int i = 0; i < n; ++i) {
            const double u = rng.uniform01();
            const std::size_t j = std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
            cols[i] = nu.atoms[j];
        }
        const double v = std::abs(det_columns(cols));
        sum += v;
        sumsq += v * v;
    }
    MonteCarloEstimate est;
    const double tN = static_cast<double>(trials);
    est.estimate = sum / tN;
    const double var = std::max(0.0, (sumsq - tN * est.estimate * est.estimate) / (tN - 1.0));
    est.stderr_ = std::sqrt(var / tN);
    return est;
}

DiscreteDistribution interpolate_distribution(const BoundaryDistributionFamily& f, const DomainPtr& d,
                                              const Vec& x, const WosConfig& cfg) {
    validate_distribution_family(f);
    const HarmonicMeasure mu = measure_at(d, x, f.mesh, cfg);
    std::vector<Vec> atoms;
    std::vector<double> probs;
    for (int j = 0; j < f.mesh->count(); ++j) {
        const double w = mu.weights[j];
        if (w == 0.0) continue;
        const auto& nu = f.distributions[j];
        for (std::size_t i = 0; i < nu.atoms.size(); ++i) {
            atoms.push_back(nu.atoms[i]);
            probs.push_back(w * nu.probs[i]);
        }
    }
    // Mixture weights sum to 1 up to the measure normalization.
    double total = 0.0;
    for (double p : probs) total += p;
    for (double& p : probs) p /= total;
    return canonical_distribution(f.distributions.front().dim, std::move(atoms), std::move(probs));
}

RandomDetReport random_det_superharmonicity_report(const BoundaryDistributionFamily& f, const DomainPtr& d,
                                                   const std::vector<Vec>& points, double eps, int k,
                                                   const WosConfig& cfg) {
    RandomDetReport rep;
    const int n = f.distributions.front().dim;
    const double inv_n = 1.0 / static_cast<double>(n);
    double min_deficit = std::numeric_limits<double>::infinity();
    double max_abs = 0.0;
    for (const Vec& x : points) {
        if (boundary_distance(*d, x) <= eps)
            throw std::invalid_argument("random_det_superharmonicity_report: eps ball exits the domain");
        EadRecord rec;
        rec.x = x;
        rec.ead = ead_zonoid(interpolate_distribution(f, d, x, cfg));
        rec.ead_root = std::pow(rec.ead, inv_n);
        const auto ys = sphere_points(x, eps, k);
        double mean = 0.0;
        for (const Vec& y : ys)
            mean += std::pow(ead_zonoid(interpolate_distribution(f, d, y, cfg)), inv_n);
        mean /= static_cast<double>(ys.size());
        rec.deficit = rec.ead_root - mean;
        min_deficit = std::min(min_deficit, rec.deficit);
        max_abs = std::max(max_abs, std::abs(rec.deficit));
        rep.records.push_back(std::move(rec));
    }
    rep.min_deficit = min_deficit;
    rep.max_abs_deficit = max_abs;
    return rep;
}

}  // namespace harmin
