#include "harmin/polytope.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace harmin {

namespace {

double point_scale(const std::vector<Vec>& pts) {
    double s = 1.0;
    for (const Vec& p : pts)
        for (double c : p) s = std::max(s, std::abs(c));
    return s;
}

std::vector<Vec> dedupe_points(const std::vector<Vec>& pts, double tol) {
    std::vector<Vec> sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    std::vector<Vec> out;
    for (const Vec& p : sorted) {
        bool dup = false;
        for (auto it = out.rbegin(); it != out.rend(); ++it) {
            if (std::abs((*it)[0] - p[0]) > tol) break;
            bool close = true;
            for (std::size_t i = 0; i < p.size(); ++i)
                if (std::abs((*it)[i] - p[i]) > tol) { close = false; break; }
            if (close) { dup = true; break; }
        }
        if (!dup) out.push_back(p);
    }
    return out;
}

// Monotone chain; drops collinear points. Returns CCW order.
std::vector<Vec> hull_2d(std::vector<Vec> pts, double eps) {
    std::sort(pts.begin(), pts.end());
    const int n = static_cast<int>(pts.size());
    if (n <= 2) return pts;
    std::vector<Vec> h(2 * n);
    int k = 0;
    for (int i = 0; i < n; ++i) {
        while (k >= 2 && cross2(sub(h[k - 1], h[k - 2]), sub(pts[i], h[k - 2])) <= eps) --k;
        h[k++] = pts[i];
    }
    const int lower = k + 1;
    for (int i = n - 2; i >= 0; --i) {
        while (k >= lower && cross2(sub(h[k - 1], h[k - 2]), sub(pts[i], h[k - 2])) <= eps) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

struct Face {
    std::array<int, 3> v;
    Vec n;       // outward normal (not normalized)
    double off;  // n . x = off on the face plane
};

Vec tri_normal(const Vec& a, const Vec& b, const Vec& c) {
    const Vec u = sub(b, a), w = sub(c, a);
    return Vec{u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0]};
}

}  // namespace

std::vector<std::array<int, 3>> convex_hull_3d(const std::vector<Vec>& points) {
    const int n = static_cast<int>(points.size());
    if (n < 4) return {};
    const double scale = point_scale(points);
    const double eps = 1e-9 * scale;

    // Initial simplex from spread-out points.
    int i0 = 0;
    for (int i = 1; i < n; ++i)
        if (points[i] < points[i0]) i0 = i;
    int i1 = -1;
    double best = eps;
    for (int i = 0; i < n; ++i) {
        const double d = dist(points[i], points[i0]);
        if (d > best) { best = d; i1 = i; }
    }
    if (i1 < 0) return {};
    int i2 = -1;
    best = eps * best;
    const Vec e = sub(points[i1], points[i0]);
    for (int i = 0; i < n; ++i) {
        const Vec d = sub(points[i], points[i0]);
        const Vec c{e[1] * d[2] - e[2] * d[1], e[2] * d[0] - e[0] * d[2], e[0] * d[1] - e[1] * d[0]};
        const double a = norm(c);
        if (a > best) { best = a; i2 = i; }
    }
    if (i2 < 0) return {};
    int i3 = -1;
    const Vec nrm = tri_normal(points[i0], points[i1], points[i2]);
    best = eps * norm(nrm);
    for (int i = 0; i < n; ++i) {
        const double d = std::abs(dot(nrm, sub(points[i], points[i0])));
        if (d > best) { best = d; i3 = i; }
    }
    if (i3 < 0) return {};

    auto make_face = [&](int a, int b, int c, const Vec& inside) {
        Face f;
        f.v = {a, b, c};
        f.n = tri_normal(points[a], points[b], points[c]);
        if (dot(f.n, sub(inside, points[a])) > 0.0) {
            std::swap(f.v[1], f.v[2]);
            f.n = negated(f.n);
        }
        f.off = dot(f.n, points[f.v[0]]);
        return f;
    };

    Vec inner(3, 0.0);
    for (int i : {i0, i1, i2, i3}) inner = add(inner, points[i]);
    inner = scaled(inner, 0.25);

    std::vector<Face> faces;
    faces.push_back(make_face(i0, i1, i2, inner));
    faces.push_back(make_face(i0, i1, i3, inner));
    faces.push_back(make_face(i0, i2, i3, inner));
    faces.push_back(make_face(i1, i2, i3, inner));

    for (int p = 0; p < n; ++p) {
        if (p == i0 || p == i1 || p == i2 || p == i3) continue;
        std::vector<int> visible;
        for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
            const double side = dot(faces[f].n, points[p]) - faces[f].off;
            if (side > eps * std::max(1.0, norm(faces[f].n))) visible.push_back(f);
        }
        if (visible.empty()) continue;
        // Horizon = edges of visible faces appearing exactly once.
        std::vector<std::array<int, 2>> edges;
        for (int f : visible)
            for (int k = 0; k < 3; ++k) {
                int a = faces[f].v[k], b = faces[f].v[(k + 1) % 3];
                bool cancelled = false;
                for (auto it = edges.begin(); it != edges.end(); ++it) {
                    if ((*it)[0] == b && (*it)[1] == a) {
                        edges.erase(it);
                        cancelled = true;
                        break;
                    }
                }
                if (!cancelled) edges.push_back({a, b});
            }
        std::sort(visible.rbegin(), visible.rend());
        for (int f : visible) faces.erase(faces.begin() + f);
        for (const auto& e2 : edges) faces.push_back(make_face(e2[0], e2[1], p, inner));
    }

    std::vector<std::array<int, 3>> out;
    out.reserve(faces.size());
    for (const Face& f : faces) out.push_back(f.v);
    return out;
}

Polytope canonical_polytope(int dim, const std::vector<Vec>& points) {
    if (dim != 2 && dim != 3) throw std::invalid_argument("canonical_polytope: dim must be 2 or 3");
    for (const Vec& p : points) require_dim(p, dim, "canonical_polytope");
    Polytope out;
    out.dim = dim;
    if (points.empty()) return out;
    const double scale = point_scale(points);
    const std::vector<Vec> uniq = dedupe_points(points, 1e-9 * scale);
    if (dim == 2) {
        out.vertices = hull_2d(uniq, 1e-12 * scale * scale);
        // hull_2d returns CCW already; a 2-point hull stays as the segment.
    } else {
        const auto tris = convex_hull_3d(uniq);
        if (tris.empty()) {
            // Affinely dependent: keep the deduped points (flat body).
            out.vertices = uniq;
        } else {
            std::vector<char> used(uniq.size(), 0);
            for (const auto& t : tris)
                for (int i : t) used[i] = 1;
            for (std::size_t i = 0; i < uniq.size(); ++i)
                if (used[i]) out.vertices.push_back(uniq[i]);
            std::sort(out.vertices.begin(), out.vertices.end());
        }
    }
    return out;
}

SupportBody support_of_polytope(const Polytope& p, const GridPtr& grid) {
    if (p.vertices.empty()) throw std::invalid_argument("support_of_polytope: empty vertex list");
    if (grid->dim != p.dim) throw std::invalid_argument("support_of_polytope: dimension mismatch");
    std::vector<double> values(grid->count());
    for (int k = 0; k < grid->count(); ++k) values[k] = support_of_polytope(p, grid->directions[k]);
    return SupportBody(grid, std::move(values));
}

double support_of_polytope(const Polytope& p, const Vec& xi) {
    if (p.vertices.empty()) throw std::invalid_argument("support_of_polytope: empty vertex list");
    require_dim(xi, p.dim, "support_of_polytope");
    double best = dot(p.vertices[0], xi);
    for (std::size_t i = 1; i < p.vertices.size(); ++i) best = std::max(best, dot(p.vertices[i], xi));
    return best;
}

double volume_polytope(const Polytope& p) {
    if (p.dim != 2 && p.dim != 3) throw std::invalid_argument("volume_polytope: dim must be 2 or 3");
    if (static_cast<int>(p.vertices.size()) < p.dim + 1) return 0.0;
    if (p.dim == 2) {
        const double scale = point_scale(p.vertices);
        const auto h = hull_2d(dedupe_points(p.vertices, 1e-12 * scale), 1e-14 * scale * scale);
        if (h.size() < 3) return 0.0;
        double a = 0.0;
        for (std::size_t i = 0; i < h.size(); ++i) {
            const Vec& u = h[i];
            const Vec& v = h[(i + 1) % h.size()];
            a += u[0] * v[1] - v[0] * u[1];
        }
        return std::abs(a) / 2.0;
    }
    const auto tris = convex_hull_3d(p.vertices);
    if (tris.empty()) return 0.0;
    Vec c(3, 0.0);
    for (const Vec& v : p.vertices) c = add(c, v);
    c = scaled(c, 1.0 / static_cast<double>(p.vertices.size()));
    double vol = 0.0;
    for (const auto& t : tris) {
        const std::vector<Vec> cols{sub(p.vertices[t[0]], c), sub(p.vertices[t[1]], c), sub(p.vertices[t[2]], c)};
        vol += det_columns(cols);
    }
    return std::abs(vol) / 6.0;
}

Vec centroid_polytope(const Polytope& p) {
    Vec mean(p.dim, 0.0);
    if (p.vertices.empty()) return mean;
    for (const Vec& v : p.vertices) mean = add(mean, v);
    mean = scaled(mean, 1.0 / static_cast<double>(p.vertices.size()));
    if (volume_polytope(p) <= 0.0) return mean;

    if (p.dim == 2) {
        const double scale = point_scale(p.vertices);
        const auto h = hull_2d(dedupe_points(p.vertices, 1e-12 * scale), 1e-14 * scale * scale);
        double a = 0.0;
        Vec c(2, 0.0);
        for (std::size_t i = 0; i < h.size(); ++i) {
            const Vec& u = h[i];
            const Vec& v = h[(i + 1) % h.size()];
            const double w = u[0] * v[1] - v[0] * u[1];
            a += w;
            c[0] += (u[0] + v[0]) * w;
            c[1] += (u[1] + v[1]) * w;
        }
        return Vec{c[0] / (3.0 * a), c[1] / (3.0 * a)};
    }
    const auto tris = convex_hull_3d(p.vertices);
    double vol = 0.0;
    Vec c(3, 0.0);
    for (const auto& t : tris) {
        const Vec& a = p.vertices[t[0]];
        const Vec& b = p.vertices[t[1]];
        const Vec& d = p.vertices[t[2]];
        const std::vector<Vec> cols{sub(a, mean), sub(b, mean), sub(d, mean)};
        const double w = det_columns(cols) / 6.0;
        vol += w;
        for (int i = 0; i < 3; ++i) c[i] += w * (mean[i] + a[i] + b[i] + d[i]) / 4.0;
    }
    if (std::abs(vol) < 1e-300) return mean;
    return scaled(c, 1.0 / vol);
}

}  // namespace harmin
