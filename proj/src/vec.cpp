#include "harmin/vec.hpp"

#include <cmath>

namespace harmin {

namespace {

double det2(double a, double b, double c, double d) { return a * d - b * c; }

double det3(const std::vector<Vec>& m) {
    // columns m[0..2]
    return m[0][0] * det2(m[1][1], m[2][1], m[1][2], m[2][2]) -
           m[1][0] * det2(m[0][1], m[2][1], m[0][2], m[2][2]) +
           m[2][0] * det2(m[0][1], m[1][1], m[0][2], m[1][2]);
}

double det4(const std::vector<Vec>& m) {
    double acc = 0.0;
    for (int j = 0; j < 4; ++j) {
        std::vector<Vec> minor;
        minor.reserve(3);
        for (int c = 0; c < 4; ++c) {
            if (c == j) continue;
            Vec col(3);
            for (int r = 1; r < 4; ++r) col[r - 1] = m[c][r];
            minor.push_back(std::move(col));
        }
        const double t = m[j][0] * det3(minor);
        acc += (j % 2 == 0) ? t : -t;
    }
    return acc;
}

}  // namespace

double det_columns(const std::vector<Vec>& cols) {
    const int n = static_cast<int>(cols.size());
    switch (n) {
        case 1: return cols[0][0];
        case 2: return det2(cols[0][0], cols[1][0], cols[0][1], cols[1][1]);
        case 3: return det3(cols);
        case 4: return det4(cols);
        default: throw std::invalid_argument("det_columns: supported for n <= 4");
    }
}

bool solve_dense(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double>& x) {
    const int n = static_cast<int>(a.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-14) return false;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (int r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    x.assign(n, 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
        x[r] = s / a[r][r];
    }
    return true;
}

}  // namespace harmin
