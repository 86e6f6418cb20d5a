#pragma once

// 3-periodic confocal Poncelet family (elliptic billiard triangles) in the
// Jacobi parametrization P_i(u) = [-a sn(u + i du), b cn(u + i du)].

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "psts/elliptic.hpp"
#include "psts/errors.hpp"
#include "psts/vec.hpp"

namespace psts {

/// Outer ellipse E (a, b) and confocal caustic (a_c, b_c) admitting a
/// 3-periodic family with turning number 1.
struct ConfocalPair {
    double a = 0.0, b = 0.0;
    double a_c = 0.0, b_c = 0.0;
    double m = 0.0;   ///< elliptic parameter (a_c^2 - b_c^2) / a_c^2
    double K = 0.0;   ///< quarter period
    double du = 0.0;  ///< vertex spacing 4 tau K / N
    static constexpr int N = 3;
    static constexpr int tau = 1;

    double period() const { return 4.0 * K; }
};

inline ConfocalPair pair_from_caustic(double a_c, double b_c) {
    if (!(b_c > 0.0) || !(a_c > b_c))
        throw DomainError("pair_from_caustic: need a_c > b_c > 0 (got a_c=" + std::to_string(a_c) +
                          ", b_c=" + std::to_string(b_c) + ")");
    ConfocalPair p;
    p.a_c = a_c;
    p.b_c = b_c;
    p.m = (a_c * a_c - b_c * b_c) / (a_c * a_c);
    p.K = complete_K(EllipticModulus::from_m(p.m));
    p.du = 4.0 * ConfocalPair::tau * p.K / ConfocalPair::N;
    p.b = b_c / jacobi_sn_cn_dn(0.5 * p.du, p.m).cn;
    p.a = std::sqrt(p.b * p.b + a_c * a_c - b_c * b_c);
    return p;
}

/// Inverse of pair_from_caustic: bisection on the caustic aspect ratio
/// b_c / a_c so that the outer aspect ratio matches, then a uniform rescale.
inline ConfocalPair pair_from_outer(double a, double b) {
    if (!(b > 0.0) || !(a > b))
        throw DomainError("pair_from_outer: need a > b > 0 (got a=" + std::to_string(a) +
                          ", b=" + std::to_string(b) + ")");
    const double target = b / a;
    auto outer_ratio = [](double r) {
        ConfocalPair p = pair_from_caustic(1.0, r);
        return p.b / p.a;
    };
    double lo = 1e-6, hi = 1.0 - 1e-12;
    double f_lo = outer_ratio(lo) - target;
    double f_hi = outer_ratio(hi) - target;
    if (f_lo * f_hi > 0.0)
        throw NumericError("pair_from_outer: outer aspect ratio " + std::to_string(target) +
                           " not bracketed by caustic ratios [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        double mid = 0.5 * (lo + hi);
        double f_mid = outer_ratio(mid) - target;
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    const double r = 0.5 * (lo + hi);
    const double scale = a / pair_from_caustic(1.0, r).a;
    return pair_from_caustic(scale, scale * r);
}

/// Vertex P_i(u), i = 1..3 (any integer is accepted; it is taken mod 3).
template <class T>
Vec2<T> vertex(const ConfocalPair& p, int i, const T& u) {
    auto [s, c, d] = jacobi_sn_cn_dn(u + T(i * p.du), p.m);
    (void)d;
    return {T(-p.a) * s, T(p.b) * c};
}

/// Tangency point on the caustic of the line through p and q, via the pole of
/// the line: alpha x + beta y = 1 touches x^2/a_c^2 + y^2/b_c^2 = 1 at
/// (a_c^2 alpha, b_c^2 beta).
inline Point2 caustic_contact(const ConfocalPair& pair, const Point2& p, const Point2& q) {
    double det = p.x * q.y - p.y * q.x;
    double alpha = (q.y - p.y) / det;
    double beta = (p.x - q.x) / det;
    return {pair.a_c * pair.a_c * alpha, pair.b_c * pair.b_c * beta};
}

/// One triangle of the family. Index 0..2 stands for P_1..P_3; edge i runs
/// from P_i to P_{i+1} and touches the caustic at Q_i.
struct TriangleState {
    double u = 0.0;
    std::array<Point2, 3> P{};
    std::array<Point2, 3> Q{};
    std::array<double, 3> edge{};  ///< |P_i P_{i+1}|
    double perimeter = 0.0;

    /// Length of the side opposite P_i.
    double opposite(int i) const { return edge[(i + 1) % 3]; }
};

inline double wrap_parameter(const ConfocalPair& pair, double u) {
    double T = pair.period();
    double w = u - T * std::floor(u / T);
    return w >= T ? 0.0 : w;
}

inline TriangleState triangle_at(const ConfocalPair& pair, double u) {
    TriangleState s;
    s.u = wrap_parameter(pair, u);
    for (int i = 0; i < 3; ++i) s.P[i] = vertex(pair, i + 1, s.u);
    for (int i = 0; i < 3; ++i) {
        const Point2& p = s.P[i];
        const Point2& q = s.P[(i + 1) % 3];
        s.Q[i] = caustic_contact(pair, p, q);
        s.edge[i] = distance(p, q);
        s.perimeter += s.edge[i];
    }
    return s;
}

inline Point2 barycenter(const std::array<Point2, 3>& P) {
    return (1.0 / 3.0) * (P[0] + P[1] + P[2]);
}

/// Incenter: vertices weighted by the length of the opposite side.
inline Point2 incenter(const std::array<Point2, 3>& P) {
    double w0 = distance(P[1], P[2]);
    double w1 = distance(P[2], P[0]);
    double w2 = distance(P[0], P[1]);
    return (1.0 / (w0 + w1 + w2)) * (w0 * P[0] + w1 * P[1] + w2 * P[2]);
}

enum class Center { X1, X2 };

inline Point2 triangle_center(const TriangleState& s, Center which) {
    return which == Center::X1 ? incenter(s.P) : barycenter(s.P);
}

/// Interior angle at P[i].
inline double interior_angle(const std::array<Point2, 3>& P, int i) {
    Point2 e1 = P[(i + 1) % 3] - P[i];
    Point2 e2 = P[(i + 2) % 3] - P[i];
    return std::atan2(std::abs(cross(e1, e2)), dot(e1, e2));
}

struct InvariantReport {
    int samples = 0;
    double perimeter_mean = 0.0;
    double perimeter_spread = 0.0;  ///< (max - min) / mean
    double reflection_max_deviation = 0.0;  ///< radians
    double cosine_sum_mean = 0.0;
    double cosine_sum_spread = 0.0;  ///< max - min
};

/// Reflection law, perimeter and sum of angle cosines over a uniform u grid.
inline InvariantReport billiard_invariants(const ConfocalPair& pair, int samples) {
    if (samples < 2) throw DomainError("billiard_invariants: need at least 2 samples");
    InvariantReport r;
    r.samples = samples;
    double pmin = INFINITY, pmax = -INFINITY, cmin = INFINITY, cmax = -INFINITY;
    for (int k = 0; k < samples; ++k) {
        TriangleState s = triangle_at(pair, k * pair.period() / samples);
        double cs = 0.0;
        for (int i = 0; i < 3; ++i) {
            const Point2& p = s.P[i];
            Point2 n{p.x / (pair.a * pair.a), p.y / (pair.b * pair.b)};
            Point2 to_prev = s.P[(i + 2) % 3] - p;
            Point2 to_next = s.P[(i + 1) % 3] - p;
            double in = std::atan2(std::abs(cross(n, to_prev)), dot(n, to_prev));
            double out = std::atan2(std::abs(cross(n, to_next)), dot(n, to_next));
            r.reflection_max_deviation = std::max(r.reflection_max_deviation, std::abs(in - out));
            cs += std::cos(interior_angle(s.P, i));
        }
        pmin = std::min(pmin, s.perimeter);
        pmax = std::max(pmax, s.perimeter);
        cmin = std::min(cmin, cs);
        cmax = std::max(cmax, cs);
        r.perimeter_mean += s.perimeter / samples;
        r.cosine_sum_mean += cs / samples;
    }
    r.perimeter_spread = (pmax - pmin) / r.perimeter_mean;
    r.cosine_sum_spread = cmax - cmin;
    return r;
}

struct AngularRow {
    double u = 0.0;
    std::array<double, 3> t{};  ///< P_i = [a cos t_i, b sin t_i], unwrapped
};

/// Eccentric-anomaly angles of the three vertices along a u grid, unwrapped
/// into continuous curves.
inline std::vector<AngularRow> angular_positions(const ConfocalPair& pair, std::span<const double> u_grid) {
    std::vector<AngularRow> rows;
    rows.reserve(u_grid.size());
    for (double u : u_grid) {
        AngularRow row;
        row.u = u;
        for (int i = 0; i < 3; ++i) {
            Point2 p = vertex(pair, i + 1, u);
            double t = std::atan2(p.y / pair.b, p.x / pair.a);
            if (!rows.empty()) {
                double prev = rows.back().t[i];
                t = prev + std::remainder(t - prev, 2.0 * std::numbers::pi);
            }
            row.t[i] = t;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace psts
