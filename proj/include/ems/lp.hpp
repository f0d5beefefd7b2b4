#pragma once

#include "ems/linalg.hpp"
#include "ems/point.hpp"

namespace ems {

enum class LPStatus { OPTIMAL, INFEASIBLE, UNBOUNDED };

struct LPResult {
    LPStatus status;
    Rat value;        // objective at optimum
    Vec x;            // primal solution
};

// max c.x subject to A x = b, x >= 0. Exact two-phase simplex with Bland's
// rule; intended for the tiny systems of the intersection tests.
LPResult solve_lp(const Matrix& a, const Vec& b, const Vec& c);

// Whether the open interiors of two non-degenerate d-simplices intersect.
bool interiors_intersect(const std::vector<Point>& a, const std::vector<Point>& b);

// Whether conv(a) and conv(b) intersect exactly in conv(shared vertex ids):
// the simplicial-complex compatibility condition for two top simplices.
bool proper_intersection(const PointSet& pts, const IdSet& a, const IdSet& b);

}  // namespace ems
