#pragma once

#include <vector>

namespace harmin {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    double value = 0.0;
    std::vector<double> x;
};

// maximize c.x subject to A x = b, x >= 0.
// Dense two-phase simplex with Bland's rule; intended for few rows
// (equality constraints) and up to a few thousand columns.
LpResult lp_maximize_equality(const std::vector<double>& c,
                              const std::vector<std::vector<double>>& a,
                              const std::vector<double>& b);

}  // namespace harmin
