#pragma once

#include <set>
#include <string>

#include "ems/point.hpp"

namespace ems {

// Pure combinatorics: top-dimensional simplices as sorted id sets over some
// PointSet. Faces are derived on demand; size = number of top simplices.
struct SimplicialComplex {
    int dim = 0;                 // dimension of the top simplices
    IdSet vertexset;             // union of all top simplex vertices
    std::set<IdSet> top;         // each of size dim+1
    std::string provenance;      // shelling | pulling | star | order | manual

    size_t size() const { return top.size(); }
    bool has_vertex(int id) const {
        return std::binary_search(vertexset.begin(), vertexset.end(), id);
    }
};

SimplicialComplex make_complex(int dim, std::set<IdSet> top, std::string provenance);

// Size guarantee met by a construction: achieved count vs the evaluated
// bound of the formula it claims. Bounds may be non-integer rationals
// (improved-constant mode), so slack is rational.
struct SizeCertificate {
    long achieved = 0;
    std::string formula;         // human-readable bound expression
    Rat bound = 0;
    Rat slack = 0;               // achieved - bound
    std::string branch;          // which proof branch produced the count
    bool asymptotic_met = true;  // headline closed form applies at this n
};

SizeCertificate make_certificate(long achieved, std::string formula, Rat bound,
                                 std::string branch = "", bool asymptotic_met = true);

struct ValidationResult {
    bool ok = true;
    IdSet bad_a, bad_b;          // first violating pair when !ok
    std::string reason;
};

// Exact validity: every pair of top simplices meets face-to-face, every top
// simplex is non-degenerate. With check_cover, additionally certifies that
// the complex triangulates Conv(vertexset): exact rational volumes sum to
// the hull volume (interior-disjointness makes this a covering proof).
ValidationResult validate_complex(const SimplicialComplex& k, const PointSet& pts,
                                  bool check_cover = false);

// Exact total volume of the top simplices.
Rat complex_volume(const SimplicialComplex& k, const PointSet& pts);

// Exact volume of Conv(ids) via a cone triangulation from one hull vertex.
Rat hull_volume(const PointSet& pts, const IdSet& ids);

// Subcomplex of the top simplices containing every id in pin.
SimplicialComplex pinned_subcomplex(const SimplicialComplex& k, const IdSet& pin);

}  // namespace ems
