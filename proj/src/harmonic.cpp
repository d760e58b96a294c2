#include "harmin/harmonic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "harmin/direction_grid.hpp"
#include "harmin/errors.hpp"
#include "harmin/rng.hpp"

namespace harmin {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr std::int64_t kStepBudget = 1000000;
}  // namespace

DomainPtr make_ball(int m, Vec center, double radius) {
    if (m < 1 || m > 3) throw std::invalid_argument("make_ball: m must be in {1,2,3}");
    if (!(radius > 0.0)) throw std::invalid_argument("make_ball: radius must be positive");
    require_dim(center, m, "make_ball");
    auto d = std::make_shared<Domain>();
    d->m = m;
    d->kind = Domain::Kind::ball;
    d->center = std::move(center);
    d->radius = radius;
    return d;
}

DomainPtr make_general_2d(std::function<double(const Vec&)> signed_distance,
                          std::function<Vec(double)> boundary_param) {
    auto d = std::make_shared<Domain>();
    d->m = 2;
    d->kind = Domain::Kind::general;
    d->signed_distance = std::move(signed_distance);
    d->boundary_param = std::move(boundary_param);
    return d;
}

double boundary_distance(const Domain& d, const Vec& x) {
    if (d.kind == Domain::Kind::ball) return d.radius - dist(x, d.center);
    return -d.signed_distance(x);
}

bool is_interior(const Domain& d, const Vec& x) { return boundary_distance(d, x) > 0.0; }

MeshPtr make_boundary_mesh(const DomainPtr& domain, int count) {
    if (!domain) throw std::invalid_argument("make_boundary_mesh: null domain");
    auto mesh = std::make_shared<BoundaryMesh>();
    mesh->domain = domain;
    const Domain& d = *domain;
    if (d.kind == Domain::Kind::ball) {
        if (d.m == 1) {
            mesh->nodes = {Vec{d.center[0] - d.radius}, Vec{d.center[0] + d.radius}};
            mesh->arc_weights = {0.5, 0.5};
        } else if (d.m == 2) {
            if (count < 3) throw std::invalid_argument("make_boundary_mesh: count too small");
            mesh->nodes.reserve(count);
            mesh->arc_weights.assign(count, 1.0 / count);
            for (int j = 0; j < count; ++j) {
                const double a = kTwoPi * j / count;
                mesh->nodes.push_back(
                    Vec{d.center[0] + d.radius * std::cos(a), d.center[1] + d.radius * std::sin(a)});
            }
        } else {
            if (count < 4 || count % 2 != 0)
                throw std::invalid_argument("make_boundary_mesh: m=3 needs an even count >= 4");
            auto dirs = low_discrepancy_sphere(3, count / 2);
            mesh->arc_weights.assign(count, 1.0 / count);
            for (int sgn = 0; sgn < 2; ++sgn)
                for (const Vec& u : dirs) {
                    Vec p(3);
                    for (int i = 0; i < 3; ++i)
                        p[i] = d.center[i] + d.radius * (sgn == 0 ? u[i] : -u[i]);
                    mesh->nodes.push_back(std::move(p));
                }
        }
    } else {
        if (count < 3) throw std::invalid_argument("make_boundary_mesh: count too small");
        mesh->nodes.reserve(count);
        for (int j = 0; j < count; ++j) mesh->nodes.push_back(d.boundary_param(static_cast<double>(j) / count));
        // Weights proportional to local arc length.
        std::vector<double> w(count);
        double total = 0.0;
        for (int j = 0; j < count; ++j) {
            const Vec& prev = mesh->nodes[(j + count - 1) % count];
            const Vec& next = mesh->nodes[(j + 1) % count];
            w[j] = 0.5 * (dist(mesh->nodes[j], prev) + dist(mesh->nodes[j], next));
            total += w[j];
        }
        for (double& v : w) v /= total;
        mesh->arc_weights = std::move(w);
    }
    return mesh;
}

void validate_measure(const HarmonicMeasure& mu) {
    double s = 0.0;
    for (double w : mu.weights) {
        if (!(w >= 0.0)) throw std::invalid_argument("measure: negative weight");
        s += w;
    }
    if (std::abs(s - 1.0) > 1e-10) throw std::invalid_argument("measure: weights must sum to 1");
}

HarmonicMeasure poisson_weights(const DomainPtr& domain, const Vec& x, const MeshPtr& mesh) {
    if (!domain || domain->kind != Domain::Kind::ball)
        throw std::invalid_argument("poisson_weights: closed form exists for balls only");
    const Domain& d = *domain;
    require_dim(x, d.m, "poisson_weights");
    const double r2 = d.radius * d.radius;
    const double dc2 = [&] {
        double s = 0.0;
        for (int i = 0; i < d.m; ++i) {
            const double t = x[i] - d.center[i];
            s += t * t;
        }
        return s;
    }();
    if (dc2 >= r2 * (1.0 - 1e-14)) throw std::invalid_argument("poisson_weights: x must be strictly interior");

    HarmonicMeasure mu;
    mu.mesh = mesh;
    mu.weights.resize(mesh->count());
    const double num = r2 - dc2;
    double total = 0.0;
    for (int j = 0; j < mesh->count(); ++j) {
        const double dj = dist(x, mesh->nodes[j]);
        const double kernel = num / std::pow(dj, static_cast<double>(d.m));
        mu.weights[j] = mesh->arc_weights[j] * kernel;
        total += mu.weights[j];
    }
    for (double& w : mu.weights) w /= total;
    return mu;
}

namespace {

int bin_to_mesh(const Domain& d, const BoundaryMesh& mesh, const Vec& p) {
    if (d.kind == Domain::Kind::ball && d.m == 2) {
        const double a = std::atan2(p[1] - d.center[1], p[0] - d.center[0]);
        const int m = mesh.count();
        int j = static_cast<int>(std::lround(a / kTwoPi * m));
        j %= m;
        if (j < 0) j += m;
        return j;
    }
    if (d.kind == Domain::Kind::ball && d.m == 1) return (p[0] < d.center[0]) ? 0 : 1;
    // Nearest node; for smooth boundaries this matches the geodesic-nearest
    // parameter at mesh resolution.
    int best = 0;
    double bd = dist(p, mesh.nodes[0]);
    for (int j = 1; j < mesh.count(); ++j) {
        const double dj = dist(p, mesh.nodes[j]);
        if (dj < bd) { bd = dj; best = j; }
    }
    return best;
}

Vec random_unit(Rng& rng, int m) {
    if (m == 1) return Vec{rng.uniform01() < 0.5 ? -1.0 : 1.0};
    if (m == 2) {
        const double a = kTwoPi * rng.uniform01();
        return Vec{std::cos(a), std::sin(a)};
    }
    while (true) {
        Vec u{rng.gaussian(), rng.gaussian(), rng.gaussian()};
        const double len = norm(u);
        if (len > 1e-12) return scaled(u, 1.0 / len);
    }
}

}  // namespace

HarmonicMeasure wos_measure(const DomainPtr& domain, const Vec& x, const MeshPtr& mesh,
                            std::int64_t trials, double shell, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("wos_measure: trials must be >= 1");
    if (!(shell > 0.0)) throw std::invalid_argument("wos_measure: shell must be positive");
    const Domain& d = *domain;
    require_dim(x, d.m, "wos_measure");
    if (!is_interior(d, x)) throw std::invalid_argument("wos_measure: x must be interior");

    std::vector<std::int64_t> counts(mesh->count(), 0);
    for (std::int64_t t = 0; t < trials; ++t) {
        Rng rng(seed, static_cast<std::uint64_t>(t));
        Vec p = x;
        std::int64_t steps = 0;
        while (true) {
            const double r = boundary_distance(d, p);
            if (r <= shell) break;
            const Vec u = random_unit(rng, d.m);
            for (int i = 0; i < d.m; ++i) p[i] += r * u[i];
            if (++steps > kStepBudget)
                throw GuardError("wos_measure: step budget exceeded in trial " + std::to_string(t));
        }
        ++counts[bin_to_mesh(d, *mesh, p)];
    }
    HarmonicMeasure mu;
    mu.mesh = mesh;
    mu.weights.resize(mesh->count());
    for (int j = 0; j < mesh->count(); ++j)
        mu.weights[j] = static_cast<double>(counts[j]) / static_cast<double>(trials);
    return mu;
}

HarmonicMeasure measure_at(const DomainPtr& domain, const Vec& x, const MeshPtr& mesh,
                           const WosConfig& cfg) {
    if (domain->kind == Domain::Kind::ball) return poisson_weights(domain, x, mesh);
    if (cfg.trials <= 0)
        throw std::invalid_argument("measure_at: general domain requires walk-on-spheres trials");
    return wos_measure(domain, x, mesh, cfg.trials, cfg.shell, cfg.seed);
}

std::vector<Vec> sphere_points(const Vec& x, double eps, int k) {
    const int m = static_cast<int>(x.size());
    if (k < 1) throw std::invalid_argument("sphere_points: K must be >= 1");
    std::vector<Vec> pts;
    pts.reserve(k);
    if (m == 1) {
        for (int i = 0; i < k; ++i) pts.push_back(Vec{x[0] + ((i % 2 == 0) ? eps : -eps)});
    } else if (m == 2) {
        for (int i = 0; i < k; ++i) {
            const double a = kTwoPi * i / k;
            pts.push_back(Vec{x[0] + eps * std::cos(a), x[1] + eps * std::sin(a)});
        }
    } else {
        if (k % 2 != 0) throw std::invalid_argument("sphere_points: m=3 needs even K");
        auto dirs = low_discrepancy_sphere(3, k / 2);
        for (int sgn = 0; sgn < 2; ++sgn)
            for (const Vec& u : dirs) {
                Vec p(3);
                for (int i = 0; i < 3; ++i) p[i] = x[i] + eps * (sgn == 0 ? u[i] : -u[i]);
                pts.push_back(std::move(p));
            }
    }
    return pts;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) throw std::invalid_argument("total_variation: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
    return 0.5 * s;
}

double mean_value_residual(const DomainPtr& domain, const Vec& x, double eps, const MeshPtr& mesh,
                           int k, const WosConfig& cfg) {
    if (k < 8) throw std::invalid_argument("mean_value_residual: K must be >= 8");
    if (boundary_distance(*domain, x) <= eps)
        throw std::invalid_argument("mean_value_residual: eps ball exits the domain");
    const HarmonicMeasure mu_x = measure_at(domain, x, mesh, cfg);
    const auto ys = sphere_points(x, eps, k);
    std::vector<double> avg(mesh->count(), 0.0);
    for (const Vec& y : ys) {
        const HarmonicMeasure mu_y = measure_at(domain, y, mesh, cfg);
        for (int j = 0; j < mesh->count(); ++j) avg[j] += mu_y.weights[j];
    }
    const double inv = 1.0 / static_cast<double>(ys.size());
    for (double& v : avg) v *= inv;
    return total_variation(mu_x.weights, avg);
}

double harmonic_extension(const HarmonicMeasure& mu, const std::vector<double>& boundary_values) {
    if (boundary_values.size() != mu.weights.size())
        throw std::invalid_argument("harmonic_extension: value count mismatch");
    double s = 0.0;
    for (std::size_t j = 0; j < mu.weights.size(); ++j) s += mu.weights[j] * boundary_values[j];
    return s;
}

double harmonic_extension(const DomainPtr& domain, const MeshPtr& mesh,
                          const std::vector<double>& boundary_values, const Vec& x,
                          const WosConfig& cfg) {
    return harmonic_extension(measure_at(domain, x, mesh, cfg), boundary_values);
}

}  // namespace harmin
