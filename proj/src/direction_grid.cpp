#include "harmin/direction_grid.hpp"

#include <cmath>
#include <stdexcept>

#include "harmin/rng.hpp"

namespace harmin {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

std::vector<Vec> low_discrepancy_sphere(int n, int count) {
    // Halton points mapped through Box-Muller pairs, then normalized.
    static const int bases[] = {2, 3, 5, 7};
    std::vector<Vec> pts;
    pts.reserve(count);
    const int pairs = (n + 1) / 2;
    std::uint64_t index = 1;
    while (static_cast<int>(pts.size()) < count) {
        Vec p(n);
        for (int q = 0; q < pairs; ++q) {
            double u1 = halton(index, bases[2 * q]);
            const double u2 = halton(index, bases[2 * q + 1]);
            if (u1 <= 1e-300) u1 = 1e-300;
            const double r = std::sqrt(-2.0 * std::log(u1));
            const double a = kTwoPi * u2;
            p[2 * q] = r * std::cos(a);
            if (2 * q + 1 < n) p[2 * q + 1] = r * std::sin(a);
        }
        ++index;
        const double len = norm(p);
        if (len < 1e-8) continue;
        for (double& c : p) c /= len;
        pts.push_back(std::move(p));
    }
    return pts;
}

GridPtr make_direction_grid(int n, int count) {
    if (n < 2 || n > 4) throw std::invalid_argument("make_direction_grid: n must be in {2,3,4}");
    if (count % 2 != 0) throw std::invalid_argument("make_direction_grid: count must be even");
    if (count < 2 * n) throw std::invalid_argument("make_direction_grid: count must be >= 2n");

    auto grid = std::make_shared<DirectionGrid>();
    grid->dim = n;
    grid->directions.reserve(count);
    grid->quad_weights.assign(count, 1.0 / static_cast<double>(count));
    grid->antipode.assign(count, -1);

    const int half = count / 2;
    if (n == 2) {
        // First half by angle, second half by exact negation; the combined
        // sequence stays sorted by angle over [0, 2pi).
        for (int k = 0; k < half; ++k) {
            const double a = kTwoPi * k / count;
            grid->directions.push_back(Vec{std::cos(a), std::sin(a)});
        }
        for (int k = 0; k < half; ++k) grid->directions.push_back(negated(grid->directions[k]));
        for (int k = 0; k < count; ++k) grid->antipode[k] = (k + half) % count;
    } else {
        auto base = low_discrepancy_sphere(n, half);
        for (auto& p : base) grid->directions.push_back(p);
        for (int k = 0; k < half; ++k) grid->directions.push_back(negated(grid->directions[k]));
        for (int k = 0; k < half; ++k) {
            grid->antipode[k] = k + half;
            grid->antipode[k + half] = k;
        }
    }
    validate_grid(*grid);
    return grid;
}

void validate_grid(const DirectionGrid& grid) {
    const int count = grid.count();
    if (count == 0) throw std::invalid_argument("grid: empty");
    double wsum = 0.0;
    for (int k = 0; k < count; ++k) {
        const Vec& xi = grid.directions[k];
        if (static_cast<int>(xi.size()) != grid.dim) throw std::invalid_argument("grid: direction dim mismatch");
        if (std::abs(norm(xi) - 1.0) > 1e-12) throw std::invalid_argument("grid: direction not unit");
        const double w = grid.quad_weights[k];
        if (!(w >= 0.0)) throw std::invalid_argument("grid: negative quad weight");
        wsum += w;
        const int a = grid.antipode[k];
        if (a < 0 || a >= count) throw std::invalid_argument("grid: missing antipode");
        const Vec& eta = grid.directions[a];
        for (int i = 0; i < grid.dim; ++i)
            if (eta[i] != -xi[i]) throw std::invalid_argument("grid: antipode not exact negation");
    }
    if (std::abs(wsum - 1.0) > 1e-12) throw std::invalid_argument("grid: weights must sum to 1");
}

bool same_grid(const GridPtr& a, const GridPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->dim != b->dim || a->count() != b->count()) return false;
    for (int k = 0; k < a->count(); ++k) {
        if (a->quad_weights[k] != b->quad_weights[k]) return false;
        for (int i = 0; i < a->dim; ++i)
            if (a->directions[k][i] != b->directions[k][i]) return false;
    }
    return true;
}

}  // namespace harmin
