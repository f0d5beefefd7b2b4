#pragma once

#include <optional>
#include <vector>

#include "ems/linalg.hpp"
#include "ems/point.hpp"

namespace ems {

enum class Location { INTERIOR, BOUNDARY, OUTSIDE };

// Sign of the determinant of the d x d difference matrix of d+1 points in
// R^d. Zero iff the points are affinely dependent.
int orientation(const std::vector<Point>& pts);

// Classification of p against a non-degenerate simplex of d+1 points by
// exact barycentric coordinates.
Location in_simplex(const Point& p, const std::vector<Point>& simplex);

// Exact barycentric coordinates of p w.r.t. a non-degenerate simplex.
Vec barycentric(const Point& p, const std::vector<Point>& simplex);

// Precomputed facet normals of one simplex: classifies many points against
// the same simplex with d+1 dot products each.
class SimplexTester {
  public:
    SimplexTester(const PointSet& pts, const IdSet& simplex);
    Location locate(const Point& p) const;

  private:
    std::vector<Hyperplane> facets_;   // oriented so the opposite vertex is positive
};

// Hyperplane through d affinely independent points in R^d, normal by
// cofactor expansion. Throws "degenerate-simplex" on dependence.
Hyperplane hyperplane_through(const std::vector<Point>& pts);

struct GeneralPositionResult {
    bool ok = true;
    IdSet violating;   // a (k+1)-subset with zero orientation when !ok
};

// Exhaustive check that every (d+1)-subset is affinely independent (and
// smaller subsets too, which d+1 independence implies under full rank).
// Gated to cap points; throws "budget" beyond it.
GeneralPositionResult general_position_check(const PointSet& pts, size_t cap = 64);

// vol(simplex) = |det| / d!, exact.
Rat simplex_volume(const std::vector<Point>& simplex);
Rat simplex_volume(const PointSet& pts, const IdSet& simplex);

}  // namespace ems
