#pragma once

#include "ems/complex.hpp"
#include "ems/point.hpp"

namespace ems {

// A family of interior-disjoint d-simplices all containing the pin X in
// their vertex sets. base holds exactly the pinned simplices; full is the
// enclosing construction (a triangulation where one exists), which may
// coincide with base for cone constructions.
struct PinnedComplex {
    SimplicialComplex base;
    SimplicialComplex full;
    IdSet pin;
    SizeCertificate cert;
};

// Simplex-hulled sets: recursive split at the interior point nearest the
// facet opposite p (ties by id). Certificate vs (d-1)n - d^2 + 2.
PinnedComplex star_in_simplex(const PointSet& pts, int p_id);

// Planar fan around p: one triangle per consecutive direction pair spanning
// an angle below pi. Certificate vs n - 2 (n - 1 when p is interior).
PinnedComplex fan_2d(const PointSet& pts, int p_id);

// d=3: pulling triangulation of hull points + p, then the simplex-hulled
// star inside every cell. Certificate vs 2n-6 (interior) or
// 2n - degree(p) - 4 (hull vertex).
PinnedComplex star_3d(const PointSet& pts, int p_id);

struct StarHighdOptions {
    int direction_budget = 20000;
    bool improved_constant = false;
};

// d>3: halving hyperplane through p, central projection of the rest onto
// two parallel walls, a large triangulation on each (d-1)-dimensional
// image, then lift and cone to p. Certificate sums the per-side branch
// bounds; the headline log form is flagged unmet at desk scale.
PinnedComplex star_highd(const PointSet& pts, int p_id, const StarHighdOptions& opt = {});

// Pins of size 1 <= r <= d-1: collapse the pin flat by orthogonal
// projection, build the image star around p_X, and lift. r = d-2 requires
// p_X interior to the image hull (throws "pin-extremal" otherwise, which by
// the projection criterion happens exactly when Conv(X) is a (d-3)-face of
// the hull).
PinnedComplex star_subset(const PointSet& pts, const IdSet& x);

// The projected image used by star_subset and the extremal test: pin
// collapsed to a single representative vertex keeping id x[0].
PointSet collapse_pin(const PointSet& pts, const IdSet& x);

// Both sides of the projection criterion, exposed for equivalence testing:
// whether p_X is extremal in the collapsed image.
bool pin_projects_extremal(const PointSet& pts, const IdSet& x);

}  // namespace ems
