#pragma once

#include <map>

#include "ems/predicates.hpp"

namespace ems {

struct Facet {
    IdSet verts;        // d vertex ids, sorted
    Hyperplane plane;   // oriented outward: normal . x <= offset inside
};

// Facet/ridge structure of a simplicial d-polytope.
struct HullSkeleton {
    int dim = 0;
    std::vector<Facet> facets;
    IdSet vertices;          // hull vertices
    IdSet interior;          // input points that are not hull vertices
    std::vector<long> fvector;   // f_0 .. f_{d-1}

    bool is_vertex(int id) const;
    // Pairs of facet indices sharing a (d-1)-subset of vertices.
    std::vector<std::pair<size_t, size_t>> ridges() const;
};

struct FacetVisibility {
    Point viewer;
    std::vector<size_t> visible;   // facet indices
};

// Incremental beneath-beyond hull with exact predicates; insertion order by
// ascending id for reproducibility. Requires >= d+1 points in general
// position (degeneracies throw "not-general-position").
HullSkeleton build_hull(const PointSet& pts);

struct SkeletonGraph {
    std::vector<std::pair<int, int>> edges;   // id pairs, first < second
    std::map<int, int> degree;
};

SkeletonGraph one_skeleton(const HullSkeleton& hull);

FacetVisibility visible_facets(const HullSkeleton& hull, const Point& p);

bool is_face_of_hull(const IdSet& x, const HullSkeleton& hull);

// Every point of the subset is a vertex of the subset's own hull.
bool in_convex_position(const PointSet& pts);

struct ConvexSubsetOptions {
    size_t max_size = 16;      // subset size cap for d >= 3
    size_t max_points = 32;    // input size cap for d >= 3
    size_t node_budget = 5'000'000;
};

// Largest convex-position subset: exact DP in the plane, capped exhaustive
// search above. Throws "convex-subset-not-found" (with the best subset in
// the message) when the floor is unreachable within budget.
IdSet max_convex_subset(const PointSet& pts, size_t floor,
                        const ConvexSubsetOptions& opt = {});

// Lower Bound Theorem check on an f-vector of a simplicial d-polytope.
bool satisfies_lower_bound_theorem(int d, const std::vector<long>& fvec);

}  // namespace ems
