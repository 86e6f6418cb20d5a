#pragma once

// Closed space curves on the endpoint-identified (toroidal) surface and their
// pairwise linking numbers.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "psts/confocal.hpp"
#include "psts/errors.hpp"
#include "psts/surface.hpp"
#include "psts/vec.hpp"

namespace psts {

enum class CurveKind { vertex, contact, X1, X2 };

/// Which point of the triangle a curve follows. index is 1..3 for vertex and
/// contact curves and ignored for the centers.
struct CurveLabel {
    CurveKind kind = CurveKind::vertex;
    int index = 1;

    std::string name() const {
        switch (kind) {
            case CurveKind::vertex: return "vertex_" + std::to_string(index);
            case CurveKind::contact: return "contact_" + std::to_string(index);
            case CurveKind::X1: return "X1";
            default: return "X2";
        }
    }
    friend bool operator==(const CurveLabel&, const CurveLabel&) = default;
};

inline CurveLabel vertex_curve(int i) { return {CurveKind::vertex, i}; }
inline CurveLabel contact_curve(int i) { return {CurveKind::contact, i}; }

/// Closed polyline; the last point connects back to the first.
struct SpaceCurve {
    CurveLabel label;
    std::vector<Point3> points;
    std::vector<Point2> planar;  ///< (x, y) preimage of each point
    std::vector<double> u;

    size_t samples() const { return points.size(); }
};

inline Point2 labelled_point(const TriangleState& s, CurveLabel label) {
    switch (label.kind) {
        case CurveKind::vertex: return s.P[(label.index - 1) % 3];
        case CurveKind::contact: return s.Q[(label.index - 1) % 3];
        case CurveKind::X1: return triangle_center(s, Center::X1);
        default: return triangle_center(s, Center::X2);
    }
}

inline SpaceCurve sweep_curve(const ConfocalPair& pair, CurveLabel label, int samples, double major_radius = 0.0) {
    if (samples < 64) throw DomainError("sweep_curve: need at least 64 samples");
    if ((label.kind == CurveKind::vertex || label.kind == CurveKind::contact) &&
        (label.index < 1 || label.index > 3))
        throw DomainError("sweep_curve: curve index must be 1, 2 or 3");
    const double R = major_radius > 0.0 ? major_radius : default_major_radius(pair);
    const double T = pair.period();
    SpaceCurve c;
    c.label = label;
    c.points.reserve(samples);
    for (int k = 0; k < samples; ++k) {
        const double u = k * T / samples;
        Point2 xy = labelled_point(triangle_at(pair, u), label);
        c.u.push_back(u);
        c.planar.push_back(xy);
        c.points.push_back(toroidal_point(xy, u, T, R));
    }
    return c;
}

inline SpaceCurve reversed(SpaceCurve c) {
    std::reverse(c.points.begin(), c.points.end());
    std::reverse(c.planar.begin(), c.planar.end());
    std::reverse(c.u.begin(), c.u.end());
    return c;
}

namespace detail {

inline double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

// Squared distance between segments [p, p + d1] and [q, q + d2].
inline double segment_distance_sq(const Point3& p, const Point3& d1, const Point3& q, const Point3& d2) {
    const Point3 r = p - q;
    const double a = dot(d1, d1), e = dot(d2, d2), f = dot(d2, r);
    const double c = dot(d1, r), b = dot(d1, d2);
    const double denom = a * e - b * b;
    double s = denom > 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
    double t = (b * s + f) / e;
    if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
    } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
    }
    const Point3 gap = (p + s * d1) - (q + t * d2);
    return dot(gap, gap);
}

inline double bounding_diagonal(const std::vector<Point3>& pts) {
    Point3 lo = pts.front(), hi = pts.front();
    for (const Point3& p : pts) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
    }
    return norm(hi - lo);
}

}  // namespace detail

/// Signed solid angle subtended by two straight segments [p1,p2] and [p3,p4];
/// summing over all segment pairs of two closed polygons gives 4 pi Lk
/// exactly.
inline double segment_pair_solid_angle(const Point3& p1, const Point3& p2, const Point3& p3, const Point3& p4) {
    const Point3 r13 = p3 - p1, r14 = p4 - p1, r23 = p3 - p2, r24 = p4 - p2;
    Point3 n[4] = {cross(r13, r14), cross(r14, r24), cross(r24, r23), cross(r23, r13)};
    for (Point3& x : n) {
        const double len = norm(x);
        if (len == 0.0) return 0.0;
        x = x / len;
    }
    const double omega = std::asin(detail::clamp_unit(dot(n[0], n[1]))) +
                         std::asin(detail::clamp_unit(dot(n[1], n[2]))) +
                         std::asin(detail::clamp_unit(dot(n[2], n[3]))) +
                         std::asin(detail::clamp_unit(dot(n[3], n[0])));
    const double orient = dot(cross(p4 - p3, p2 - p1), r13);
    return orient > 0.0 ? omega : (orient < 0.0 ? -omega : 0.0);
}

inline double min_distance(const SpaceCurve& c1, const SpaceCurve& c2) {
    const size_t n1 = c1.points.size(), n2 = c2.points.size();
    double best = INFINITY;
    for (size_t i = 0; i < n1; ++i) {
        const Point3& p = c1.points[i];
        const Point3 d1 = c1.points[(i + 1) % n1] - p;
        for (size_t j = 0; j < n2; ++j) {
            const Point3& q = c2.points[j];
            best = std::min(best, detail::segment_distance_sq(p, d1, q, c2.points[(j + 1) % n2] - q));
        }
    }
    return std::sqrt(best);
}

struct LinkResult {
    int lk = 0;
    double raw = 0.0;
    double residual = 0.0;  ///< |raw - lk|
};

/// Gauss linking number of two disjoint closed polylines.
inline LinkResult linking_number(const SpaceCurve& c1, const SpaceCurve& c2) {
    if (c1.points.size() < 3 || c2.points.size() < 3)
        throw DomainError("linking_number: curves need at least 3 points");
    const double scale = std::max(detail::bounding_diagonal(c1.points), detail::bounding_diagonal(c2.points));
    const double gap = min_distance(c1, c2);
    if (!(gap > 1e-6 * scale))
        throw DomainError("linking_number: curves " + c1.label.name() + " and " + c2.label.name() +
                          " are too close (distance " + std::to_string(gap) +
                          "); refine sampling or change the major radius");
    const size_t n1 = c1.points.size(), n2 = c2.points.size();
    double total = 0.0;
    for (size_t i = 0; i < n1; ++i) {
        const Point3& p1 = c1.points[i];
        const Point3& p2 = c1.points[(i + 1) % n1];
        double row = 0.0;
        for (size_t j = 0; j < n2; ++j)
            row += segment_pair_solid_angle(p1, p2, c2.points[j], c2.points[(j + 1) % n2]);
        total += row;
    }
    LinkResult r;
    r.raw = total / (4.0 * std::numbers::pi);
    r.lk = static_cast<int>(std::lround(r.raw));
    r.residual = std::abs(r.raw - r.lk);
    return r;
}

enum class TangleClass { hopf_3_link, borromean_like, other, unreliable };

inline const char* to_string(TangleClass c) {
    switch (c) {
        case TangleClass::hopf_3_link: return "hopf_3_link";
        case TangleClass::borromean_like: return "borromean_like";
        case TangleClass::other: return "other";
        default: return "unreliable";
    }
}

struct LinkReport {
    std::vector<std::string> labels;
    std::vector<std::vector<int>> matrix;
    std::vector<std::vector<double>> raw;
    std::vector<std::vector<double>> residuals;
    double residual_threshold = 0.05;
    bool reliable = true;
    TangleClass classification = TangleClass::other;

    double max_residual() const {
        double m = 0.0;
        for (const auto& row : residuals)
            for (double r : row) m = std::max(m, r);
        return m;
    }
};

struct TangleOptions {
    double residual_threshold = 0.05;
    /// The caller asserts the curves are nontrivially arranged; enables the
    /// borromean_like class when every pair is unlinked.
    bool nontrivial_arrangement = false;
};

inline LinkReport tangle_report(const std::vector<SpaceCurve>& curves, const TangleOptions& opt = {}) {
    if (curves.size() < 2) throw DomainError("tangle_report: need at least two curves");
    const size_t n = curves.size();
    LinkReport rep;
    rep.residual_threshold = opt.residual_threshold;
    rep.matrix.assign(n, std::vector<int>(n, 0));
    rep.raw.assign(n, std::vector<double>(n, 0.0));
    rep.residuals.assign(n, std::vector<double>(n, 0.0));
    for (const SpaceCurve& c : curves) rep.labels.push_back(c.label.name());
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            LinkResult r = linking_number(curves[i], curves[j]);
            rep.matrix[i][j] = rep.matrix[j][i] = r.lk;
            rep.raw[i][j] = rep.raw[j][i] = r.raw;
            rep.residuals[i][j] = rep.residuals[j][i] = r.residual;
        }
    }
    if (rep.max_residual() > opt.residual_threshold) {
        rep.reliable = false;
        rep.classification = TangleClass::unreliable;
        return rep;
    }
    bool all_one = true, all_zero = true;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            all_one = all_one && std::abs(rep.matrix[i][j]) == 1;
            all_zero = all_zero && rep.matrix[i][j] == 0;
        }
    if (n == 3 && all_one)
        rep.classification = TangleClass::hopf_3_link;
    else if (all_zero && opt.nontrivial_arrangement)
        rep.classification = TangleClass::borromean_like;
    else
        rep.classification = TangleClass::other;
    return rep;
}

}  // namespace psts
