#pragma once

#include <map>
#include <string>
#include <vector>

#include "ems/complex.hpp"
#include "ems/instance.hpp"
#include "ems/point.hpp"

namespace ems {

// Points plus a color partition into k nonempty classes, colors 0..k-1.
struct ColoredPointSet {
    PointSet pts;
    std::map<int, int> color;  // id -> color
    int k = 0;

    PointSet color_class(int c) const;
};

ColoredPointSet make_colored(PointSet pts, std::map<int, int> color, int k);
ColoredPointSet make_colored(const Instance& inst);

struct DiscrepancyStats {
    std::vector<long> class_sizes;  // indexed by color
    int smax = 0, smin = 0;         // ids of an extreme class (ties: smallest)
    long delta = 0;                 // k * |S_max| - n
};

DiscrepancyStats discrepancy(const ColoredPointSet& s);

// Hypothesis |S_min| <= n/k - (k-1)*f of the forcing implication; when it
// holds, delta >= k*f follows (exact rational comparison).
bool small_min_class(const DiscrepancyStats& st, int k, const Rat& f);
bool forced_discrepancy(const DiscrepancyStats& st, int k, const Rat& f);

// Contrapositive: delta < k*f implies every class exceeds n/k - (k-1)*f.
bool min_class_above(const DiscrepancyStats& st, int k, const Rat& f);

// Empty monochromatic simplices constructed from the per-pin star families
// of the largest color class, deduplicated by exact vertex set and
// re-verified empty against the whole set.
struct WitnessReport {
    std::string regime;            // k2-d2 | k2-d3+ | k-le-d | k3-d3 | k3-d4 | k3-d5+
    int color = 0;                 // the witnessed (largest) class
    std::vector<IdSet> simplices;  // distinct, empty, monochromatic
    bool empty_verified = false;
    bool pins_disjoint = true;     // every per-pin family validated
    long pins_used = 0;
    long pins_skipped = 0;         // extremal or failed pins
    SizeCertificate bound;         // see regime notes below
    std::vector<std::string> notes;
};

// Regime dispatch by (k, d). Exact-formula regimes (k=2 d=2; k=3 d=3)
// certify the total distinct count against the closed form; the remaining
// regimes certify the minimum per-pin empty count against the per-pin
// floor (delta - d, delta - 2d - 8, ...). Unknown (k, d) combinations
// throw "no-regime".
WitnessReport discrepancy_witnesses(const ColoredPointSet& s);

// True when no point of s lies strictly inside the simplex.
bool simplex_empty(const ColoredPointSet& s, const IdSet& simplex);

}  // namespace ems
