#pragma once

#include "sdc/rational.hpp"

namespace sdc {

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPResult {
    LPStatus status = LPStatus::Infeasible;
    Point x;
    Rational value;
};

/**
 * Exact two-phase simplex with Bland's rule:
 *   maximize c·x  subject to  le_rows·x ≤ le_rhs,  eq_rows·x = eq_rhs.
 * Variables are free unless `nonnegative` is set.
 */
LPResult lp_maximize(const Point& c,
                     const Matrix& le_rows, const Point& le_rhs,
                     const Matrix& eq_rows = {}, const Point& eq_rhs = {},
                     bool nonnegative = false);

} // namespace sdc
