#pragma once

#include <string>
#include <vector>

#include "ems/colored.hpp"
#include "ems/complex.hpp"
#include "ems/point.hpp"

namespace ems {

struct CensusOptions {
    unsigned long max_subsets = 2'000'000;  // candidate (d+1)-subsets
    int jobs = 1;
};

// Ground truth: exhaustive enumeration of empty monochromatic d-simplices.
struct CensusResult {
    std::vector<long> per_color;
    long total = 0;
    unsigned long long subsets_examined = 0;
};

CensusResult census(const ColoredPointSet& s, const CensusOptions& opt = {});

// One empty monochromatic simplex for (d+1)-colored sets: a large
// triangulation of the biggest class survives the other colors whenever
// they are outnumbered. Below the asymptotic threshold the construction may
// come up dry; the census then answers and inconclusive is set.
struct MonoWitness {
    IdSet simplex;             // empty when nothing was found anywhere
    bool found = false;
    bool inconclusive = false;  // construction dry, census consulted
    long survivors = 0;         // cells left empty of the full set
};

MonoWitness exists_empty_mono(const ColoredPointSet& s);

struct SlabOptions {
    size_t mu = 0;  // slab size; 0 picks the smallest size that works here
};

// Linear count by slab partition: sweep-sort along a direction with all
// projections distinct, one witness per slab, every witness re-verified
// empty against the whole set (discards are reported, never expected).
// color is -1 when slabs yield witnesses of different colors.
WitnessReport linear_witnesses(const ColoredPointSet& s, const SlabOptions& opt = {});

// Either many empty monochromatic simplices of one color, or a convex
// region with high discrepancy. Regions are closed: region == S cap
// Conv(region), and region_delta is measured after closure.
struct DichotomyOutcome {
    enum class Kind { WITNESSES, CONVEX_SET };
    Kind kind = Kind::WITNESSES;
    WitnessReport witnesses;      // accumulated in both outcomes
    IdSet region;
    long region_delta = 0;
    std::string exit_inequality;  // the threshold that triggered the exit
    long rounds = 0;
    std::vector<std::string> notes;
};

// Convex-layer peeling for k = d colors: per round the hull of the color-j
// class feeds the generalized order construction; hull points of that class
// are peeled off. Every discrepancy threshold is evaluated exactly and a
// triggered exit is honored only if the closed region still meets it.
DichotomyOutcome peel_dichotomy_kcolor(const ColoredPointSet& s, int j);

// Induction on the dimension for 3 <= k <= d: project from every color-j
// apex onto the fuller of two walls, recurse one dimension down, cone
// witnesses back to the apex (re-verified), lift convex regions through the
// preimage.
DichotomyOutcome project_induct_kcolor(const ColoredPointSet& s, int j);

// Dichotomy plus the matching discrepancy regime on the convex branch.
WitnessReport combined_kcolor(const ColoredPointSet& s);

// Rich-point iteration in the plane for two colors: fan the hull of the
// red class, work inside the fullest triangle, remove the richest corner.
DichotomyOutcome peel_dichotomy_2color(const ColoredPointSet& s);

DichotomyOutcome project_induct_2color(const ColoredPointSet& s);

WitnessReport combined_2color(const ColoredPointSet& s);

// Doubling: a paired twin q_i = p_i + eps * v_i per input point, directions
// pairwise non-parallel and generic for X; all C(n,2) simplices
// {p_i,q_i,p_j,q_j} are interior disjoint once eps is small enough (eps is
// halved until every exact check passes).
struct DoublingResult {
    PointSet s;                    // 2n points, twins get fresh ids
    std::vector<IdSet> simplices;  // C(n,2) vertex sets
    bool verified = false;         // full quadratic disjointness check
    Rat epsilon;                   // the eps actually used
};

DoublingResult doubling_construction(const PointSet& x, const Rat& epsilon0 = Rat(1));

// lhs^e >= rhs for nonnegative rationals: the exact form of every
// fractional-power threshold comparison in the pipelines.
bool pow_ge(const Rat& lhs, const Rat& rhs, unsigned long e);

}  // namespace ems
