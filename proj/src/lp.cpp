#include "harmin/lp.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace harmin {

namespace {

constexpr double kEps = 1e-10;

struct Tableau {
    int rows, cols;                       // structural columns
    std::vector<std::vector<double>> a;   // rows x (cols + 1), last column = rhs
    std::vector<int> basis;               // basic variable per row

    void pivot(int r, int c) {
        const double piv = a[r][c];
        for (double& v : a[r]) v /= piv;
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            const double f = a[i][c];
            if (f == 0.0) continue;
            for (int j = 0; j <= cols; ++j) a[i][j] -= f * a[r][j];
        }
        basis[r] = c;
    }
};

// Maximizes obj over the tableau's feasible region. Bland's rule.
// Returns false when unbounded.
bool run_simplex(Tableau& t, std::vector<double>& obj, double& value) {
    // Reduce objective against the current basis.
    for (int r = 0; r < t.rows; ++r) {
        const double f = obj[t.basis[r]];
        if (f == 0.0) continue;
        for (int j = 0; j <= t.cols; ++j) obj[j] -= f * t.a[r][j];
    }
    const int max_iters = 50 * (t.rows + t.cols) + 1000;
    for (int iter = 0; iter < max_iters; ++iter) {
        int enter = -1;
        for (int j = 0; j < t.cols; ++j)
            if (obj[j] > kEps) { enter = j; break; }
        if (enter < 0) {
            value = -obj[t.cols];
            return true;
        }
        int leave = -1;
        double best = 0.0;
        for (int r = 0; r < t.rows; ++r) {
            if (t.a[r][enter] > kEps) {
                const double ratio = t.a[r][t.cols] / t.a[r][enter];
                if (leave < 0 || ratio < best - kEps ||
                    (ratio < best + kEps && t.basis[r] < t.basis[leave]))
                    { leave = r; best = ratio; }
            }
        }
        if (leave < 0) return false;  // unbounded
        t.pivot(leave, enter);
        const double f = obj[enter];
        if (f != 0.0)
            for (int j = 0; j <= t.cols; ++j) obj[j] -= f * t.a[leave][j];
    }
    throw std::runtime_error("lp_maximize_equality: iteration cap exceeded");
}

}  // namespace

LpResult lp_maximize_equality(const std::vector<double>& c,
                              const std::vector<std::vector<double>>& a,
                              const std::vector<double>& b) {
    const int m = static_cast<int>(a.size());
    const int n = static_cast<int>(c.size());
    for (const auto& row : a)
        if (static_cast<int>(row.size()) != n) throw std::invalid_argument("lp: row size mismatch");
    if (static_cast<int>(b.size()) != m) throw std::invalid_argument("lp: rhs size mismatch");

    Tableau t;
    t.rows = m;
    t.cols = n + m;  // structural + artificial
    t.a.assign(m, std::vector<double>(t.cols + 1, 0.0));
    t.basis.resize(m);
    for (int r = 0; r < m; ++r) {
        const double sign = (b[r] < 0.0) ? -1.0 : 1.0;
        for (int j = 0; j < n; ++j) t.a[r][j] = sign * a[r][j];
        t.a[r][n + r] = 1.0;
        t.a[r][t.cols] = sign * b[r];
        t.basis[r] = n + r;
    }

    // Phase 1: maximize -(sum of artificials).
    std::vector<double> phase1(t.cols + 1, 0.0);
    for (int r = 0; r < m; ++r) phase1[n + r] = -1.0;
    double v1 = 0.0;
    if (!run_simplex(t, phase1, v1)) throw std::runtime_error("lp: phase 1 unbounded");
    if (v1 < -1e-7) return {LpStatus::infeasible, 0.0, {}};

    // Drive any artificial still in the basis out (degenerate rows).
    for (int r = 0; r < m; ++r) {
        if (t.basis[r] >= n) {
            int enter = -1;
            for (int j = 0; j < n; ++j)
                if (std::abs(t.a[r][j]) > 1e-9) { enter = j; break; }
            if (enter >= 0) t.pivot(r, enter);
        }
    }

    // Phase 2, artificials locked out by a large penalty on re-entry.
    std::vector<double> phase2(t.cols + 1, 0.0);
    for (int j = 0; j < n; ++j) phase2[j] = c[j];
    for (int r = 0; r < m; ++r) phase2[n + r] = -1e30;
    double v2 = 0.0;
    if (!run_simplex(t, phase2, v2)) return {LpStatus::unbounded, 0.0, {}};

    LpResult res;
    res.status = LpStatus::optimal;
    res.x.assign(n, 0.0);
    for (int r = 0; r < m; ++r)
        if (t.basis[r] < n) res.x[t.basis[r]] = t.a[r][t.cols];
    double val = 0.0;
    for (int j = 0; j < n; ++j) val += c[j] * res.x[j];
    res.value = val;
    return res;
}

}  // namespace harmin
