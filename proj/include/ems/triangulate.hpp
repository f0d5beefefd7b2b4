#pragma once

#include "ems/complex.hpp"
#include "ems/point.hpp"

namespace ems {

// One insertion step: p interior to some top simplex splits it into dim+1
// parts; p outside the current vertex hull is coned over its visible
// facets. The result triangulates vertexset(T) + p.
SimplicialComplex insert_point(const SimplicialComplex& t, const PointSet& pts,
                               const Point& p);

// Triangulation by iterated insertion in the given id order; the first
// dim+1 ids must span a simplex.
SimplicialComplex shelling_triangulation(const PointSet& pts, const std::vector<int>& order);

// Cone from p over every hull facet avoiding p. Requires all other points
// to be hull vertices.
SimplicialComplex pulling_triangulation(const PointSet& pts, int p_id);

struct TriangulationOutput {
    SimplicialComplex complex;
    SizeCertificate cert;
};

struct ConvexBigOptions {
    bool improved_constant = false;   // lower the degree schedule past d(d+1)
};

// Large triangulation of a convex-position set: extract max-degree (>= 2d)
// hull vertices down to a core of d(d+1) points, shell the core, re-insert;
// every re-insertion restores >= d+1 simplices. Certificate vs
// (d+1)n - (d^3+d^2+d), or the improved constant when enabled.
TriangulationOutput convex_big_triangulation(const PointSet& pts,
                                             const ConvexBigOptions& opt = {});

// Nested sets: the convex-position shell Q triangulated large, then all of
// P inserted (interior points add d net each). Certificate vs
// (d+1)|Q| + |P| - c_d.
TriangulationOutput nested_triangulation(const PointSet& p_pts, const PointSet& q_pts);

struct DnLogOptions {
    bool improved_constant = false;
    size_t convex_search_budget = 5'000'000;
};

// General-position size guarantee: big hull branch (h > d(d+1)) or
// convex-subset branch; certificate records which branch ran and its exact
// internal bound.
TriangulationOutput dn_log_triangulation(const PointSet& pts, const DnLogOptions& opt = {});

// c_d = d^3 + d^2 + d.
inline long convex_constant(int d) { return static_cast<long>(d) * d * d + d * d + d; }

// Improved constant d(d+1)^2/2 + d(d+1)/12 (remark mode; rational).
inline Rat convex_constant_improved(int d) {
    Rat dd = d;
    return dd * (dd + 1) * (dd + 1) / 2 + dd * (dd + 1) / 12;
}

}  // namespace ems
