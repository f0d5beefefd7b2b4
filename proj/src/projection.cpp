#include "ems/projection.hpp"

namespace ems {

PointSet project_orthogonal(const PointSet& pts, const AffineFlat& flat) {
    const int d = pts.dim();
    const int r = flat.rank();
    if (r >= d) throw Error("degenerate-flat", "flat rank must be < d");
    if (rank(Matrix(flat.directions.begin(), flat.directions.end())) != r)
        throw Error("degenerate-flat", "directions not linearly independent");
    std::vector<Vec> comp = orthogonal_complement(flat.directions, d);
    std::vector<Point> out;
    out.reserve(pts.size());
    for (const Point& p : pts.points()) {
        Vec rel = sub(p.x, flat.basepoint.x);
        Vec y(comp.size());
        for (size_t i = 0; i < comp.size(); ++i)
            y[i] = dot(rel, comp[i]) / dot(comp[i], comp[i]);
        out.push_back(Point{p.id, std::move(y)});
    }
    return PointSet(std::move(out));
}

PlaneChart::PlaneChart(const Hyperplane& plane) {
    const int d = static_cast<int>(plane.normal.size());
    // Origin: offset/|n|^2 * n lies on the plane.
    Rat nn = dot(plane.normal, plane.normal);
    origin_.resize(d);
    for (int i = 0; i < d; ++i) origin_[i] = plane.offset * plane.normal[i] / nn;
    basis_ = orthogonal_complement({plane.normal}, d);
}

Vec PlaneChart::to_chart(const Vec& x) const {
    Vec rel = sub(x, origin_);
    Vec y(basis_.size());
    for (size_t i = 0; i < basis_.size(); ++i)
        y[i] = dot(rel, basis_[i]) / dot(basis_[i], basis_[i]);
    return y;
}

CentralProjection central_project(const PointSet& pts, const Point& apex,
                                  const Hyperplane& plane1, const Hyperplane& plane2) {
    if (sign(dot(plane1.normal, apex.x) - plane1.offset) == 0 ||
        sign(dot(plane2.normal, apex.x) - plane2.offset) == 0)
        throw Error("bad-plane-choice", "plane contains the apex");
    PlaneChart chart1(plane1), chart2(plane2);
    std::vector<Point> side1, side2;
    for (const Point& q : pts.points()) {
        if (q.id == apex.id) continue;
        if (same_coords(q, apex)) throw Error("duplicate", "apex coincides with a point");
        Vec dir = sub(q.x, apex.x);
        // Ray apex + t*dir, t > 0, against each plane.
        bool placed = false;
        for (int which = 0; which < 2 && !placed; ++which) {
            const Hyperplane& pl = which == 0 ? plane1 : plane2;
            Rat denom = dot(pl.normal, dir);
            if (sign(denom) == 0) continue;  // parallel to this plane
            Rat t = (pl.offset - dot(pl.normal, apex.x)) / denom;
            if (sign(t) <= 0) continue;  // plane behind the apex
            Vec hit(apex.x.size());
            for (size_t i = 0; i < hit.size(); ++i) hit[i] = apex.x[i] + t * dir[i];
            Vec y = (which == 0 ? chart1 : chart2).to_chart(hit);
            (which == 0 ? side1 : side2).push_back(Point{q.id, std::move(y)});
            placed = true;
        }
        if (!placed)
            throw Error("bad-plane-choice",
                        "ray through point " + std::to_string(q.id) + " misses both planes");
    }
    return CentralProjection{PointSet(std::move(side1)), PointSet(std::move(side2))};
}

}  // namespace ems
