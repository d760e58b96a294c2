#include "harmin/interpolation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "harmin/errors.hpp"
#include "harmin/lp.hpp"

namespace harmin {

namespace {

double node_param(int j, int count) { return static_cast<double>(j) / static_cast<double>(count); }

}  // namespace

BoundaryBodyFamily make_family(const MeshPtr& mesh, const GridPtr& grid,
                               const std::function<SupportBody(double, const Vec&)>& body_at,
                               double lipschitz) {
    BoundaryBodyFamily f;
    f.mesh = mesh;
    f.grid = grid;
    f.lipschitz = lipschitz;
    f.bodies.reserve(mesh->count());
    for (int j = 0; j < mesh->count(); ++j) f.bodies.push_back(body_at(node_param(j, mesh->count()), mesh->nodes[j]));
    validate_family(f);
    return f;
}

BoundaryBodyFamily make_zonotope_family(const MeshPtr& mesh, const GridPtr& grid,
                                        const std::function<Zonotope(double, const Vec&)>& zonotope_at,
                                        double lipschitz) {
    BoundaryBodyFamily f;
    f.mesh = mesh;
    f.grid = grid;
    f.lipschitz = lipschitz;
    for (int j = 0; j < mesh->count(); ++j) {
        f.zonotopes.push_back(zonotope_at(node_param(j, mesh->count()), mesh->nodes[j]));
        f.bodies.push_back(sample_support(f.zonotopes.back(), grid));
    }
    validate_family(f);
    return f;
}

BoundaryBodyFamily make_polytope_family(const MeshPtr& mesh, const GridPtr& grid,
                                        const std::function<Polytope(double, const Vec&)>& polytope_at,
                                        double lipschitz) {
    BoundaryBodyFamily f;
    f.mesh = mesh;
    f.grid = grid;
    f.lipschitz = lipschitz;
    for (int j = 0; j < mesh->count(); ++j) {
        f.polytopes.push_back(polytope_at(node_param(j, mesh->count()), mesh->nodes[j]));
        f.bodies.push_back(support_of_polytope(f.polytopes.back(), grid));
    }
    validate_family(f);
    return f;
}

void validate_family(const BoundaryBodyFamily& f) {
    if (!f.mesh || !f.grid) throw std::invalid_argument("family: missing mesh or grid");
    if (static_cast<int>(f.bodies.size()) != f.mesh->count())
        throw std::invalid_argument("family: one body per mesh node required");
    for (const auto& b : f.bodies)
        if (!same_grid(b.grid, f.grid)) throw std::invalid_argument("family: bodies must share the family grid");
    if (f.has_zonotopes() && f.zonotopes.size() != f.bodies.size())
        throw std::invalid_argument("family: zonotope list size mismatch");
    if (f.has_polytopes() && f.polytopes.size() != f.bodies.size())
        throw std::invalid_argument("family: polytope list size mismatch");
    if (f.lipschitz > 0.0 && f.mesh->domain->m == 2) {
        const int m = f.mesh->count();
        for (int j = 0; j < m; ++j) {
            const int jn = (j + 1) % m;
            const double spacing = dist(f.mesh->nodes[j], f.mesh->nodes[jn]);
            const double hd = hausdorff_distance(f.bodies[j], f.bodies[jn]);
            if (hd > f.lipschitz * spacing + 1e-12)
                throw std::invalid_argument("family: continuity violated at node " + std::to_string(j) +
                                            " (Hausdorff " + std::to_string(hd) + " > L*spacing)");
        }
    }
}

SupportBody minkowski_integral(const BoundaryBodyFamily& f, const HarmonicMeasure& mu) {
    if (mu.mesh != f.mesh) throw std::invalid_argument("minkowski_integral: mesh mismatch");
    const int count = f.grid->count();
    std::vector<double> values(count, 0.0);
    for (int j = 0; j < f.mesh->count(); ++j) {
        const double w = mu.weights[j];
        if (w == 0.0) continue;
        const auto& v = f.bodies[j].values;
        for (int k = 0; k < count; ++k) values[k] += w * v[k];
    }
    return SupportBody(f.grid, std::move(values));
}

Zonotope zonotope_integral(const BoundaryBodyFamily& f, const HarmonicMeasure& mu) {
    if (mu.mesh != f.mesh) throw std::invalid_argument("zonotope_integral: mesh mismatch");
    if (!f.has_zonotopes())
        throw std::invalid_argument("zonotope_integral: family carries no zonotope representation");
    const int n = f.grid->dim;
    Zonotope out;
    out.dim = n;
    out.base.assign(n, 0.0);
    for (int j = 0; j < f.mesh->count(); ++j) {
        const double w = mu.weights[j];
        const Zonotope& z = f.zonotopes[j];
        for (int i = 0; i < n; ++i) out.base[i] += w * z.base[i];
        if (w == 0.0) continue;
        for (const Vec& g : z.generators) out.generators.push_back(scaled(g, w));
    }
    return out;
}

SupportBody harmonic_interpolation(const BoundaryBodyFamily& f, const DomainPtr& d, const Vec& x,
                                   const WosConfig& cfg) {
    return minkowski_integral(f, measure_at(d, x, f.mesh, cfg));
}

SupportBody convex_interpolation_fiber(const BoundaryBodyFamily& f, const DomainPtr& d, const Vec& x) {
    const int n = f.grid->dim;
    const int m = d->m;
    if (n + m > 5) throw GuardError("convex_interpolation_fiber: n + m must be <= 5");
    if (!is_interior(*d, x)) throw std::invalid_argument("convex_interpolation_fiber: x must be interior");

    // Vertex sets per node, reconstructed unless carried exactly.
    std::vector<Polytope> polys;
    if (f.has_polytopes()) {
        polys = f.polytopes;
    } else {
        polys.reserve(f.bodies.size());
        for (const auto& b : f.bodies) polys.push_back(body_from_support(b));
    }

    std::vector<const Vec*> points;   // body vertex per column
    std::vector<const Vec*> params;   // boundary node per column
    for (std::size_t j = 0; j < polys.size(); ++j)
        for (const Vec& v : polys[j].vertices) {
            points.push_back(&v);
            params.push_back(&f.mesh->nodes[j]);
        }
    const int cols = static_cast<int>(points.size());

    // Constraints: sum lambda = 1 and sum lambda q_i = x.
    std::vector<std::vector<double>> a(m + 1, std::vector<double>(cols));
    std::vector<double> b(m + 1);
    for (int i = 0; i < cols; ++i) a[0][i] = 1.0;
    b[0] = 1.0;
    for (int r = 0; r < m; ++r) {
        for (int i = 0; i < cols; ++i) a[r + 1][i] = (*params[i])[r];
        b[r + 1] = x[r];
    }

    std::vector<double> values(f.grid->count());
    std::vector<double> c(cols);
    for (int k = 0; k < f.grid->count(); ++k) {
        const Vec& xi = f.grid->directions[k];
        for (int i = 0; i < cols; ++i) c[i] = dot(*points[i], xi);
        const LpResult res = lp_maximize_equality(c, a, b);
        if (res.status == LpStatus::infeasible)
            throw std::invalid_argument("convex_interpolation_fiber: x lies outside the hull shadow");
        if (res.status != LpStatus::optimal)
            throw std::runtime_error("convex_interpolation_fiber: LP did not converge");
        values[k] = res.value;
    }
    return SupportBody(f.grid, std::move(values));
}

SubharmonicReport subharmonic_check(const std::function<SupportBody(const Vec&)>& family_at,
                                    const Vec& x, double eps, int k) {
    const SupportBody at_x = family_at(x);
    const auto ys = sphere_points(x, eps, k);
    std::vector<SupportBody> samples;
    samples.reserve(ys.size());
    for (const Vec& y : ys) samples.push_back(family_at(y));
    const SupportBody avg =
        minkowski_combine(samples, std::vector<double>(samples.size(), 1.0 / static_cast<double>(samples.size())));
    SubharmonicReport rep;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < avg.values.size(); ++i)
        worst = std::max(worst, avg.values[i] - at_x.values[i]);
    rep.max_violation = worst;
    return rep;
}

SuperharmonicityReport superharmonicity_report(const BoundaryBodyFamily& f, const DomainPtr& d,
                                               const std::vector<Vec>& points, double eps, int k,
                                               const WosConfig& cfg) {
    SuperharmonicityReport rep;
    rep.records.reserve(points.size());
    const double inv_n = 1.0 / static_cast<double>(f.grid->dim);
    double min_deficit = std::numeric_limits<double>::infinity();
    for (const Vec& x : points) {
        if (boundary_distance(*d, x) <= eps)
            throw std::invalid_argument("superharmonicity_report: eps ball exits the domain");
        DeficitRecord rec;
        rec.x = x;
        rec.volume = support_body_volume(harmonic_interpolation(f, d, x, cfg));
        rec.root_volume = std::pow(rec.volume, inv_n);
        const auto ys = sphere_points(x, eps, k);
        double mean = 0.0;
        for (const Vec& y : ys)
            mean += std::pow(support_body_volume(harmonic_interpolation(f, d, y, cfg)), inv_n);
        mean /= static_cast<double>(ys.size());
        rec.deficit = rec.root_volume - mean;
        min_deficit = std::min(min_deficit, rec.deficit);
        rep.records.push_back(std::move(rec));
    }
    rep.min_deficit = min_deficit;
    return rep;
}

HomothetyFit homothety_fit(const std::vector<SupportBody>& bodies) {
    if (bodies.size() < 2) throw std::invalid_argument("homothety_fit: need at least 2 bodies");
    const GridPtr grid = bodies.front().grid;
    for (const auto& b : bodies)
        if (!same_grid(b.grid, grid)) throw std::invalid_argument("homothety_fit: mismatched grids");
    const int n = grid->dim;

    // Reference: first body, falling back to the body of maximal volume when
    // the first is degenerate. Normalized to volume 1, centroid at origin.
    std::size_t ref_idx = 0;
    Polytope ref_poly = body_from_support(bodies[0]);
    double ref_vol = volume_polytope(ref_poly);
    if (ref_vol <= 1e-12) {
        for (std::size_t i = 1; i < bodies.size(); ++i) {
            Polytope p = body_from_support(bodies[i]);
            const double v = volume_polytope(p);
            if (v > ref_vol) { ref_vol = v; ref_poly = std::move(p); ref_idx = i; }
        }
        if (ref_vol <= 1e-12) throw std::invalid_argument("homothety_fit: all bodies degenerate");
    }
    const Vec centroid = centroid_polytope(ref_poly);
    const double s = std::pow(ref_vol, 1.0 / static_cast<double>(n));

    HomothetyFit fit;
    std::vector<double> hb(grid->count());
    for (int k = 0; k < grid->count(); ++k)
        hb[k] = (bodies[ref_idx].values[k] - dot(centroid, grid->directions[k])) / s;
    fit.reference = SupportBody(grid, hb);

    // Least squares in (c, d) over the grid directions.
    const int vars = 1 + n;
    for (const auto& body : bodies) {
        std::vector<std::vector<double>> ata(vars, std::vector<double>(vars, 0.0));
        std::vector<double> atb(vars, 0.0);
        for (int k = 0; k < grid->count(); ++k) {
            std::vector<double> row(vars);
            row[0] = hb[k];
            for (int i = 0; i < n; ++i) row[1 + i] = grid->directions[k][i];
            for (int r = 0; r < vars; ++r) {
                for (int cidx = 0; cidx < vars; ++cidx) ata[r][cidx] += row[r] * row[cidx];
                atb[r] += row[r] * body.values[k];
            }
        }
        std::vector<double> sol;
        if (!solve_dense(ata, atb, sol)) throw std::invalid_argument("homothety_fit: singular normal equations");
        fit.c.push_back(sol[0]);
        fit.d.push_back(Vec(sol.begin() + 1, sol.end()));
        double res = 0.0;
        for (int k = 0; k < grid->count(); ++k) {
            double pred = sol[0] * hb[k];
            for (int i = 0; i < n; ++i) pred += sol[1 + i] * grid->directions[k][i];
            res = std::max(res, std::abs(body.values[k] - pred));
        }
        fit.point_residual.push_back(res);
        fit.residual = std::max(fit.residual, res);
    }
    return fit;
}

EqualityCaseReport equality_case_check(const BoundaryBodyFamily& f, const DomainPtr& d,
                                       const std::vector<Vec>& points, double eps, int k,
                                       const WosConfig& cfg) {
    EqualityCaseReport rep;
    const int n = f.grid->dim;
    const double inv_n = 1.0 / static_cast<double>(n);

    std::vector<SupportBody> interior;
    interior.reserve(points.size());
    for (const Vec& x : points) interior.push_back(harmonic_interpolation(f, d, x, cfg));

    // One reference body for interior and boundary fits.
    std::vector<SupportBody> all = interior;
    all.insert(all.end(), f.bodies.begin(), f.bodies.end());
    const HomothetyFit fit = homothety_fit(all);
    const std::vector<double> boundary_c(fit.c.begin() + points.size(), fit.c.end());

    for (std::size_t i = 0; i < points.size(); ++i) {
        const Vec& x = points[i];
        EqualityCaseRecord rec;
        rec.x = x;
        rec.root_volume = std::pow(support_body_volume(interior[i]), inv_n);
        const auto ys = sphere_points(x, eps, k);
        double mean = 0.0;
        for (const Vec& y : ys)
            mean += std::pow(support_body_volume(harmonic_interpolation(f, d, y, cfg)), inv_n);
        mean /= static_cast<double>(ys.size());
        rec.deficit = rec.root_volume - mean;
        rec.fit_residual = fit.point_residual[i];
        rec.c = fit.c[i];
        rec.c_extension_gap = std::abs(fit.c[i] - harmonic_extension(d, f.mesh, boundary_c, x, cfg));
        rep.harmonicity_defect = std::max(rep.harmonicity_defect, std::abs(rec.deficit));
        rep.max_c_extension_gap = std::max(rep.max_c_extension_gap, rec.c_extension_gap);
        rep.records.push_back(std::move(rec));
    }
    rep.fit_residual = fit.residual;
    return rep;
}

}  // namespace harmin
