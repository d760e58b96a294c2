#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace harmin {

// Points, directions and generators are low-dimensional (n <= 4); a plain
// vector keeps the dimension dynamic across modules.
using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }

inline double dist(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

inline Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec scaled(const Vec& a, double t) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = t * a[i];
    return r;
}

inline Vec negated(const Vec& a) { return scaled(a, -1.0); }

inline double cross2(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

inline Vec perp2(const Vec& a) { return Vec{-a[1], a[0]}; }

// Determinant of an n-by-n matrix given as n column vectors, n <= 4.
// Cofactor expansion keeps sign handling exact for these sizes.
double det_columns(const std::vector<Vec>& cols);

// Dense Gaussian elimination with partial pivoting for the small (<= 5)
// systems used by line/plane intersections and least-squares fits.
// Returns false when the matrix is singular to working precision.
bool solve_dense(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double>& x);

inline void require_dim(const Vec& v, int dim, const char* what) {
    if (static_cast<int>(v.size()) != dim)
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace harmin
