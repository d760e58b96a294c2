#include <algorithm>
#include <cmath>

#include "harmin/errors.hpp"
#include "harmin/reconstruct.hpp"

namespace harmin {

namespace {

using Face = std::vector<Vec>;

// Clip one convex face by n . x <= h + tol; crossing points are appended to
// ring for the cap face.
Face clip_face(const Face& face, const Vec& n, double h, double tol, std::vector<Vec>& ring) {
    Face out;
    const std::size_t m = face.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Vec& p = face[i];
        const Vec& q = face[(i + 1) % m];
        const double dp = dot(n, p) - h;
        const double dq = dot(n, q) - h;
        const bool pin = dp <= tol;
        const bool qin = dq <= tol;
        if (pin) {
            out.push_back(p);
            if (std::abs(dp) <= 2.0 * tol) ring.push_back(p);
        }
        if (pin != qin) {
            const double t = dp / (dp - dq);
            Vec x(3);
            for (int c = 0; c < 3; ++c) x[c] = p[c] + t * (q[c] - p[c]);
            ring.push_back(x);
            out.push_back(std::move(x));
        }
    }
    return out;
}

std::vector<Vec> dedupe(const std::vector<Vec>& pts, double tol) {
    std::vector<Vec> out;
    for (const Vec& p : pts) {
        bool dup = false;
        for (const Vec& q : out)
            if (dist(p, q) <= tol) { dup = true; break; }
        if (!dup) out.push_back(p);
    }
    return out;
}

}  // namespace

Polytope body_from_support_3d(const SupportBody& h) {
    const auto& grid = *h.grid;
    double scale = 1.0;
    for (double v : h.values) scale = std::max(scale, std::abs(v));
    const double big = 8.0 * scale + 8.0;
    const double tol = 1e-10 * scale;

    // Axis-aligned box as six quads.
    const double B = big;
    std::vector<Face> faces = {
        {{-B, -B, -B}, {B, -B, -B}, {B, B, -B}, {-B, B, -B}},
        {{-B, -B, B}, {B, -B, B}, {B, B, B}, {-B, B, B}},
        {{-B, -B, -B}, {B, -B, -B}, {B, -B, B}, {-B, -B, B}},
        {{-B, B, -B}, {B, B, -B}, {B, B, B}, {-B, B, B}},
        {{-B, -B, -B}, {-B, B, -B}, {-B, B, B}, {-B, -B, B}},
        {{B, -B, -B}, {B, B, -B}, {B, B, B}, {B, -B, B}},
    };

    for (int k = 0; k < grid.count(); ++k) {
        const Vec& n = grid.directions[k];
        const double hk = h.values[k];
        std::vector<Vec> ring;
        std::vector<Face> next;
        next.reserve(faces.size() + 1);
        for (const Face& f : faces) {
            Face g = clip_face(f, n, hk, tol, ring);
            if (g.size() >= 3) next.push_back(std::move(g));
        }
        ring = dedupe(ring, 1e-8 * scale);
        if (ring.size() >= 3) {
            // Order the cap ring around the plane normal.
            Vec c(3, 0.0);
            for (const Vec& p : ring) c = add(c, p);
            c = scaled(c, 1.0 / static_cast<double>(ring.size()));
            Vec u = sub(ring[0], c);
            const double ulen = norm(u);
            if (ulen > 1e-14) {
                u = scaled(u, 1.0 / ulen);
                Vec v{n[1] * u[2] - n[2] * u[1], n[2] * u[0] - n[0] * u[2], n[0] * u[1] - n[1] * u[0]};
                std::sort(ring.begin(), ring.end(), [&](const Vec& a, const Vec& b) {
                    const Vec da = sub(a, c), db = sub(b, c);
                    return std::atan2(dot(da, v), dot(da, u)) < std::atan2(dot(db, v), dot(db, u));
                });
                next.push_back(ring);
            }
        }
        faces = std::move(next);
        if (faces.empty()) throw EmptyBodyError("body_from_support: halfspace intersection is empty");
    }

    std::vector<Vec> pts;
    for (const Face& f : faces)
        for (const Vec& p : f) pts.push_back(p);
    for (const Vec& p : pts)
        for (double c : p)
            if (std::abs(c) >= big * (1.0 - 1e-9))
                throw UnboundedBodyError("body_from_support: halfspace intersection is unbounded");
    return canonical_polytope(3, pts);
}

}  // namespace harmin
