#include "cfs/curvature.hpp"

#include <cmath>

#include "cfs/errors.hpp"

namespace cfs {

namespace {

double dist(const Point2& a, const Point2& b) {
    return std::hypot(b.x - a.x, b.y - a.y);
}

// Twice the signed triangle area: (p2-p1) x (p3-p1).
double cross2(const Triple& t) {
    return (t.p2.x - t.p1.x) * (t.p3.y - t.p1.y) -
           (t.p2.y - t.p1.y) * (t.p3.x - t.p1.x);
}

} // namespace

Curvature menger_curvature_checked(const Triple& t) {
    const double d12 = dist(t.p1, t.p2);
    const double d23 = dist(t.p2, t.p3);
    const double d13 = dist(t.p1, t.p3);
    if (d12 == 0.0 || d23 == 0.0 || d13 == 0.0) {
        return {0.0, true};
    }
    const double cross = std::abs(cross2(t));
    // cross = d12 * d23 * |sin(corner angle)|, so this compares the sine
    // against the angular tolerance, independent of scale.
    if (cross <= kCollinearSineTol * d12 * d23) {
        return {0.0, false};
    }
    return {2.0 * cross / (d12 * d23 * d13), false};
}

double menger_curvature(const Triple& t) {
    return menger_curvature_checked(t).value;
}

double corner_cosine(const Triple& t) {
    const double d12 = dist(t.p1, t.p2);
    const double d23 = dist(t.p2, t.p3);
    if (d12 == 0.0 || d23 == 0.0) {
        throw DataError("corner_cosine: coincident points, angle undefined");
    }
    const double d13 = dist(t.p1, t.p3);
    return (d12 * d12 + d23 * d23 - d13 * d13) / (2.0 * d12 * d23);
}

double circumradius(const Triple& t) {
    const double d12 = dist(t.p1, t.p2);
    const double d23 = dist(t.p2, t.p3);
    const double d13 = dist(t.p1, t.p3);
    const double cross = std::abs(cross2(t));
    if (d12 == 0.0 || d23 == 0.0 || d13 == 0.0 ||
        cross <= kCollinearSineTol * d12 * d23) {
        throw DataError("circumradius: collinear or coincident points have no circumcircle");
    }
    return (d12 * d23 * d13) / (2.0 * cross);
}

} // namespace cfs
