#pragma once

#include "ems/linalg.hpp"
#include "ems/point.hpp"

namespace ems {

// Orthogonal projection along a flat: image lives in R^{d-r}, coordinates
// expressed in an orthogonal-complement basis (unnormalized Gram-Schmidt).
// The flat itself collapses to a single image point.
PointSet project_orthogonal(const PointSet& pts, const AffineFlat& flat);

struct CentralProjection {
    PointSet side1;   // images on the first plane, coordinates in-plane
    PointSet side2;   // images on the second plane
};

// Projects every point from the apex onto whichever of the two parallel
// hyperplanes its ray hits; output coordinates are in a rational basis of
// each plane. Throws "bad-plane-choice" when a ray is parallel to both.
CentralProjection central_project(const PointSet& pts, const Point& apex,
                                  const Hyperplane& plane1, const Hyperplane& plane2);

// In-plane coordinates of a point known to lie on the plane, with respect
// to a fixed rational basis of the plane.
class PlaneChart {
  public:
    explicit PlaneChart(const Hyperplane& plane);
    Vec to_chart(const Vec& x) const;

  private:
    Vec origin_;
    std::vector<Vec> basis_;
};

}  // namespace ems
