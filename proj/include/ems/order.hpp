#pragma once

#include <map>
#include <set>
#include <vector>

#include "ems/complex.hpp"
#include "ems/hull.hpp"
#include "ems/point.hpp"

namespace ems {

// Strict partial order on the interior points of a simplex-hulled set,
// induced by one container facet F: p < q iff p lies strictly inside
// Conv(F + q). Materialized as the full relation (it is transitive), so the
// DAG edge set is its own transitive closure.
struct FacetOrder {
    IdSet facet;                         // d container-vertex ids
    std::map<int, std::set<int>> below;  // q -> { p : p < q }

    bool less(int p, int q) const {
        auto it = below.find(q);
        return it != below.end() && it->second.count(p) != 0;
    }
};

FacetOrder build_facet_order(const PointSet& pts, const IdSet& facet, const IdSet& interior);

// One order per container facet, in the facet order of the hull skeleton.
std::vector<FacetOrder> facet_orders(const PointSet& pts, const HullSkeleton& hull);

// Longest chain within ids, returned minimum-first. DAG longest path.
std::vector<int> longest_chain(const FacetOrder& f, const IdSet& ids);

// Largest level set of the Mirsky partition of ids; its size is at least
// |ids| / longest-chain-length.
IdSet largest_antichain(const FacetOrder& f, const IdSet& ids);

struct ChainResult {
    std::vector<int> chain;         // minimum-first under the winning order
    size_t facet_index = 0;         // index into the facet-order list
    bool terminal_verified = true;  // the final antichain really was a chain
};

// Iterated chain-or-antichain cascade over d-1 of the d+1 facet orders:
// each round keeps a chain of size >= sqrt(eta) or shrinks to an antichain
// of that size; the terminal antichain is a chain w.r.t. one remaining
// facet (verified, not assumed — a counterexample degrades to the longest
// chain inside it and clears terminal_verified). Result size >=
// ceil(eta^(2^(1-d))).
ChainResult dilworth_chain(const std::vector<FacetOrder>& facets, const IdSet& interior);

struct OrderLemmaOutput {
    SimplicialComplex complex;
    long touching = 0;        // top simplices with >= 1 container vertex
    std::vector<int> chain;   // the inserted chain, minimum-first
    bool chain_floor_met = true;  // |chain| >= ceil(eta^(2^(1-d)))
    SizeCertificate cert;     // touching vs (d-1)*eta + |chain| + 1
};

// Simplex-hulled sets: insert a long chain in reverse order (d*r + 1 cells,
// every one keeping a container vertex), then the pinned star inside each
// cell. The touching count is certified against (d-1)*eta + r + 1.
OrderLemmaOutput order_lemma_simplex(const PointSet& pts);

struct GeneralOrderOutput {
    SimplicialComplex complex;
    long touching = 0;  // top simplices with >= 1 hull vertex of the input
    SizeCertificate cert;
};

// Arbitrary sets: triangulate the hull points large (degree-peeling path
// when h > d(d+1), else a plain shelling), then run the simplex order
// construction inside each cell. Certificate vs
// (d-1)*n + ceil((n-h)^(2^(1-d))) + 2h - c_d.
GeneralOrderOutput generalized_order_lemma(const PointSet& pts);

// Smallest integer t >= 0 with t^e >= x; x < 0 gives 0.
long ceil_root(long x, unsigned long e);

}  // namespace ems
