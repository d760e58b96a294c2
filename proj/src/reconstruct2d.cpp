#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "harmin/errors.hpp"
#include "harmin/reconstruct.hpp"

namespace harmin {

namespace {

struct Halfplane {
    double nx, ny, h;  // n . x <= h, |n| = 1
    double angle;
};

bool boundary_intersection(const Halfplane& a, const Halfplane& b, double& px, double& py) {
    const double d = a.nx * b.ny - a.ny * b.nx;
    if (std::abs(d) < 1e-13) return false;
    px = (a.h * b.ny - a.ny * b.h) / d;
    py = (a.nx * b.h - a.h * b.nx) / d;
    return true;
}

double value_scale(const SupportBody& h) {
    double s = 1.0;
    for (double v : h.values) s = std::max(s, std::abs(v));
    return s;
}

// Sutherland-Hodgman clip of a convex polygon against n . x <= h + tol.
// Keeps degenerate slivers, which is how flat bodies survive reconstruction.
std::vector<Vec> clip_polygon(const std::vector<Vec>& poly, double nx, double ny, double h, double tol) {
    std::vector<Vec> out;
    const std::size_t n = poly.size();
    if (n == 0) return out;
    out.reserve(n + 2);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec& p = poly[i];
        const Vec& q = poly[(i + 1) % n];
        const double dp = nx * p[0] + ny * p[1] - h;
        const double dq = nx * q[0] + ny * q[1] - h;
        const bool pin = dp <= tol;
        const bool qin = dq <= tol;
        if (pin) out.push_back(p);
        if (pin != qin) {
            const double t = dp / (dp - dq);
            out.push_back(Vec{p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
        }
    }
    return out;
}

// Tolerance-clipping reconstruction: robust for degenerate and empty bodies.
Polytope reconstruct_2d_clip(const SupportBody& h) {
    const auto& grid = *h.grid;
    const double scale = value_scale(h);
    const double big = 8.0 * scale + 8.0;
    std::vector<Vec> poly{{-big, -big}, {big, -big}, {big, big}, {-big, big}};
    const double tol = 1e-10 * scale;
    for (int k = 0; k < grid.count(); ++k) {
        poly = clip_polygon(poly, grid.directions[k][0], grid.directions[k][1], h.values[k], tol);
        if (poly.empty()) throw EmptyBodyError("body_from_support: halfspace intersection is empty");
    }
    for (const Vec& p : poly)
        if (std::abs(p[0]) >= big * (1.0 - 1e-9) || std::abs(p[1]) >= big * (1.0 - 1e-9))
            throw UnboundedBodyError("body_from_support: halfspace intersection is unbounded");
    return canonical_polytope(2, poly);
}

// Angular-sweep intersection for full-dimensional bodies; directions arrive
// sorted by angle from make_direction_grid. Returns false when the result is
// degenerate (< 3 vertices), in which case the caller falls back to clipping.
bool reconstruct_2d_sweep(const SupportBody& h, Polytope& out) {
    const auto& grid = *h.grid;
    const int count = grid.count();
    const double scale = value_scale(h);
    const double eps_out = 1e-12 * scale;

    std::vector<Halfplane> hps;
    hps.reserve(count);
    for (int k = 0; k < count; ++k) {
        const Vec& xi = grid.directions[k];
        hps.push_back({xi[0], xi[1], h.values[k], std::atan2(xi[1], xi[0])});
    }
    std::sort(hps.begin(), hps.end(), [](const Halfplane& a, const Halfplane& b) { return a.angle < b.angle; });
    // Merge equal angles, keeping the tighter constraint.
    std::vector<Halfplane> merged;
    for (const auto& hp : hps) {
        if (!merged.empty() && std::abs(merged.back().angle - hp.angle) < 1e-12)
            merged.back().h = std::min(merged.back().h, hp.h);
        else
            merged.push_back(hp);
    }
    if (merged.size() < 3) return false;

    auto outside = [&](const Halfplane& hp, double px, double py) {
        return hp.nx * px + hp.ny * py > hp.h + eps_out;
    };

    std::deque<Halfplane> dq;
    double px, py;
    for (const auto& hp : merged) {
        while (dq.size() >= 2) {
            if (!boundary_intersection(dq[dq.size() - 1], dq[dq.size() - 2], px, py)) return false;
            if (outside(hp, px, py)) dq.pop_back();
            else break;
        }
        while (dq.size() >= 2) {
            if (!boundary_intersection(dq[0], dq[1], px, py)) return false;
            if (outside(hp, px, py)) dq.pop_front();
            else break;
        }
        dq.push_back(hp);
    }
    while (dq.size() > 2) {
        if (!boundary_intersection(dq[dq.size() - 1], dq[dq.size() - 2], px, py)) return false;
        if (outside(dq[0], px, py)) { dq.pop_back(); continue; }
        break;
    }
    while (dq.size() > 2) {
        if (!boundary_intersection(dq[0], dq[1], px, py)) return false;
        if (outside(dq[dq.size() - 1], px, py)) { dq.pop_front(); continue; }
        break;
    }
    if (dq.size() < 3) return false;

    std::vector<Vec> verts;
    verts.reserve(dq.size());
    for (std::size_t i = 0; i < dq.size(); ++i) {
        if (!boundary_intersection(dq[i], dq[(i + 1) % dq.size()], px, py)) return false;
        if (std::abs(px) > 16.0 * scale + 16.0 || std::abs(py) > 16.0 * scale + 16.0) return false;
        verts.push_back(Vec{px, py});
    }
    out = canonical_polytope(2, verts);
    return out.vertices.size() >= 3;
}

}  // namespace

Polytope body_from_support_2d(const SupportBody& h) {
    Polytope p;
    if (reconstruct_2d_sweep(h, p)) return p;
    return reconstruct_2d_clip(h);
}

Polytope body_from_support_3d(const SupportBody& h);  // reconstruct3d.cpp

Polytope body_from_support(const SupportBody& h) {
    if (!h.grid) throw std::invalid_argument("body_from_support: missing grid");
    for (double v : h.values)
        if (!std::isfinite(v)) throw std::invalid_argument("body_from_support: non-finite support value");
    if (h.grid->dim == 2) return body_from_support_2d(h);
    if (h.grid->dim == 3) return body_from_support_3d(h);
    throw std::invalid_argument("body_from_support: n must be 2 or 3");
}

SupportBody canonicalize(const SupportBody& h) {
    const Polytope p = body_from_support(h);
    return support_of_polytope(p, h.grid);
}

bool is_nonempty(const SupportBody& h) {
    try {
        (void)body_from_support(h);
        return true;
    } catch (const EmptyBodyError&) {
        return false;
    }
}

double support_body_volume(const SupportBody& h) {
    return volume_polytope(body_from_support(h));
}

double bm_deficit(const SupportBody& a, const SupportBody& b) {
    if (!same_grid(a.grid, b.grid)) throw std::invalid_argument("bm_deficit: mismatched grids");
    const int n = a.grid->dim;
    const SupportBody sum = minkowski_combine({a, b}, {1.0, 1.0});
    const double inv = 1.0 / static_cast<double>(n);
    return std::pow(support_body_volume(sum), inv) - std::pow(support_body_volume(a), inv) -
           std::pow(support_body_volume(b), inv);
}

}  // namespace harmin
