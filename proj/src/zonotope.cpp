#include "harmin/zonotope.hpp"

#include <cmath>
#include <stdexcept>

#include "harmin/errors.hpp"

namespace harmin {

double support_of_zonotope(const Zonotope& z, const Vec& xi) {
    require_dim(xi, z.dim, "support_of_zonotope");
    double s = dot(z.base, xi);
    for (const Vec& g : z.generators) {
        const double t = dot(g, xi);
        if (t > 0.0) s += t;
    }
    return s;
}

SupportBody sample_support(const Zonotope& z, const GridPtr& grid) {
    if (grid->dim != z.dim) throw std::invalid_argument("sample_support: dimension mismatch");
    std::vector<double> values(grid->count());
    for (int k = 0; k < grid->count(); ++k) values[k] = support_of_zonotope(z, grid->directions[k]);
    return SupportBody(grid, std::move(values));
}

double subset_count(int n_generators, int dim) {
    if (n_generators < dim) return 0.0;
    double c = 1.0;
    for (int i = 0; i < dim; ++i) c = c * static_cast<double>(n_generators - i) / static_cast<double>(i + 1);
    return c;
}

double volume_zonotope(const Zonotope& z) {
    const int n = z.dim;
    const int m = static_cast<int>(z.generators.size());
    if (n < 1) throw std::invalid_argument("volume_zonotope: dim must be >= 1");
    if (m < n) return 0.0;
    if (n > 4) throw GuardError("volume_zonotope: dim > 4 not supported");
    const double cost = subset_count(m, n);
    if (cost > 1e8) throw GuardError("volume_zonotope: subset count C(N,n) exceeds 1e8");

    // Lexicographic combination odometer, no recursion.
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::vector<Vec> cols(n);
    double vol = 0.0;
    while (true) {
        for (int i = 0; i < n; ++i) cols[i] = z.generators[idx[i]];
        vol += std::abs(det_columns(cols));
        int i = n - 1;
        while (i >= 0 && idx[i] == m - n + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
    }
    return vol;
}

}  // namespace harmin
