#include "harmin/support_body.hpp"

#include <cmath>
#include <stdexcept>

namespace harmin {

SupportBody minkowski_combine(const std::vector<SupportBody>& bodies, const std::vector<double>& weights) {
    if (bodies.empty()) throw std::invalid_argument("minkowski_combine: no bodies");
    if (bodies.size() != weights.size()) throw std::invalid_argument("minkowski_combine: weight count mismatch");
    const GridPtr& grid = bodies.front().grid;
    for (const auto& b : bodies)
        if (!same_grid(b.grid, grid)) throw std::invalid_argument("minkowski_combine: mismatched grids");
    for (double w : weights)
        if (!(w >= 0.0)) throw std::invalid_argument("minkowski_combine: negative weight");

    const int count = grid->count();
    std::vector<double> values(count, 0.0);
    for (std::size_t j = 0; j < bodies.size(); ++j) {
        const double w = weights[j];
        const auto& v = bodies[j].values;
        for (int k = 0; k < count; ++k) values[k] += w * v[k];
    }
    return SupportBody(grid, std::move(values));
}

double hausdorff_distance(const SupportBody& a, const SupportBody& b) {
    if (!same_grid(a.grid, b.grid)) throw std::invalid_argument("hausdorff_distance: mismatched grids");
    double m = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k) m = std::max(m, std::abs(a.values[k] - b.values[k]));
    return m;
}

bool contains(const SupportBody& a, const SupportBody& b) {
    if (!same_grid(a.grid, b.grid)) throw std::invalid_argument("contains: mismatched grids");
    for (std::size_t k = 0; k < a.values.size(); ++k)
        if (a.values[k] < b.values[k] - 1e-9) return false;
    return true;
}

}  // namespace harmin
