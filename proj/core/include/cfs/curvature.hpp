#pragma once

namespace cfs {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

/// Three consecutive 2-D points feeding one curvature evaluation.
struct Triple {
    Point2 p1, p2, p3;
};

/// Angular tolerance for the collinearity test: |sin(corner angle)| at or
/// below this yields exactly zero curvature.
inline constexpr double kCollinearSineTol = 1e-12;

struct Curvature {
    double value = 0.0;
    /// True when two or more points coincide. The value is 0 in that case,
    /// distinguishable from genuine zero curvature only via this flag.
    bool degenerate = false;
};

/// Menger curvature: the reciprocal of the circumradius of the circle through
/// the three points; 2*sin(phi)/|p1 p3| where phi is the p2-corner angle.
///
/// Computed via the cross-product area form 4*Area/(d12*d23*d13), which is
/// numerically robust near phi = 0 and phi = pi where the arccos route
/// cancels. Collinear triples return exactly 0. Result is always >= 0.
double menger_curvature(const Triple& t);

/// Same as menger_curvature but reports coincident-point degeneracy.
Curvature menger_curvature_checked(const Triple& t);

/// Cosine of the p2-corner angle by the Law of Cosines:
///
///   cos(phi) = (d12^2 + d23^2 - d13^2) / (2 * d12 * d23)
///
/// Note the denominator multiplies the two adjacent side lengths once each.
/// A mis-printed variant of this identity that squares both lengths in the
/// denominator produces values outside [-1, 1] for generic triples and is
/// not a cosine at all; see tests/acceptance for a worked demonstration.
/// Throws DataError when p1 == p2 or p2 == p3 (angle undefined).
double corner_cosine(const Triple& t);

/// Radius of the unique circle through three non-collinear points:
/// R = (d12 * d23 * d13) / (4 * Area). Independent test oracle for
/// menger_curvature. Throws DataError on collinear or coincident input
/// (infinite radius).
double circumradius(const Triple& t);

} // namespace cfs
