#pragma once

// The Poncelet spatio-temporal surface: three ruled facets
//   S_i(u, v) = [(1 - v) P_i(u) + v P_{i+1}(u), u]
// together with their fundamental forms and curvatures.
//
// Curvature is computed two independent ways: from the fundamental forms of
// the explicit parametrization (authoritative), and from the closed-form
// expressions in sn/cn/dn at the facet's vertex offsets.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "psts/confocal.hpp"
#include "psts/dual.hpp"
#include "psts/elliptic.hpp"
#include "psts/errors.hpp"
#include "psts/vec.hpp"

namespace psts {

enum class Embedding { straight, toroidal };

inline const char* to_string(Embedding e) { return e == Embedding::straight ? "straight" : "toroidal"; }

/// Default torus major radius: twice the outer semi-major axis, so the tube
/// never reaches the torus axis.
inline double default_major_radius(const ConfocalPair& pair) { return 2.0 * pair.a; }

/// Position and derivatives up to second order of a planar map (u,v) -> R^2.
template <class T>
struct PlanarJet {
    Vec2<T> f, fu, fv, fuu, fuv, fvv;
};

/// Position and derivatives up to second order of a surface (u,v) -> R^3.
template <class T>
struct SurfaceJet {
    Vec3<T> s, su, sv, suu, suv, svv;
};

namespace detail {

template <class T>
struct VertexJet {
    Vec2<T> p, dp, ddp;
};

// P(w) = [-a sn, b cn];  P' = [-a cn dn, -b sn dn];
// P'' = [a sn (dn^2 + m cn^2), -b cn (dn^2 - m sn^2)].
template <class T>
VertexJet<T> vertex_jet(const ConfocalPair& pair, int i, const T& u) {
    auto [s, c, d] = jacobi_sn_cn_dn(u + T(i * pair.du), pair.m);
    const T a(pair.a), b(pair.b), m(pair.m);
    VertexJet<T> j;
    j.p = {-a * s, b * c};
    j.dp = {-a * c * d, -b * s * d};
    j.ddp = {a * s * (d * d + m * c * c), -b * c * (d * d - m * s * s)};
    return j;
}

}  // namespace detail

/// The ruling segment Q_i(u, v) = (1 - v) P_i(u) + v P_{i+1}(u) and its derivatives.
template <class T>
PlanarJet<T> ruling_jet(const ConfocalPair& pair, int facet, const T& u, const T& v) {
    auto p = detail::vertex_jet(pair, facet, u);
    auto q = detail::vertex_jet(pair, facet + 1, u);
    const T w = T(1.0) - v;
    PlanarJet<T> j;
    j.f = w * p.p + v * q.p;
    j.fu = w * p.dp + v * q.dp;
    j.fv = q.p - p.p;
    j.fuu = w * p.ddp + v * q.ddp;
    j.fuv = q.dp - p.dp;
    j.fvv = {T(0.0), T(0.0)};
    return j;
}

/// Lift of a planar jet to (x, y, u).
template <class T>
SurfaceJet<T> straight_lift(const PlanarJet<T>& q, const T& u) {
    const T zero(0.0);
    return {{q.f.x, q.f.y, u},       {q.fu.x, q.fu.y, T(1.0)}, {q.fv.x, q.fv.y, zero},
            {q.fuu.x, q.fuu.y, zero}, {q.fuv.x, q.fuv.y, zero}, {q.fvv.x, q.fvv.y, zero}};
}

/// Toroidal lift (u, x, y) -> ((R + x) cos t, (R + x) sin t, y), t = 2 pi u / period.
inline SurfaceJet<double> toroidal_lift(const PlanarJet<double>& q, double u, double period, double R) {
    const double w = 2.0 * std::numbers::pi / period;
    const double t = w * u;
    const double c = std::cos(t), s = std::sin(t);
    const double r = R + q.f.x;
    SurfaceJet<double> j;
    j.s = {r * c, r * s, q.f.y};
    j.su = {q.fu.x * c - r * w * s, q.fu.x * s + r * w * c, q.fu.y};
    j.sv = {q.fv.x * c, q.fv.x * s, q.fv.y};
    j.suu = {q.fuu.x * c - 2.0 * q.fu.x * w * s - r * w * w * c,
             q.fuu.x * s + 2.0 * q.fu.x * w * c - r * w * w * s, q.fuu.y};
    j.suv = {q.fuv.x * c - q.fv.x * w * s, q.fuv.x * s + q.fv.x * w * c, q.fuv.y};
    j.svv = {q.fvv.x * c, q.fvv.x * s, q.fvv.y};
    return j;
}

inline Point3 toroidal_point(const Point2& xy, double u, double period, double R) {
    const double t = 2.0 * std::numbers::pi * u / period;
    return {(R + xy.x) * std::cos(t), (R + xy.x) * std::sin(t), xy.y};
}

template <class T>
struct Curvatures {
    T gaussian;
    T mean;
};

/// K and H of a surface jet with normal N = s_u x s_v / |s_u x s_v|.
template <class T>
Curvatures<T> curvature_from_jet(const SurfaceJet<T>& j) {
    using std::sqrt;
    const T E = dot(j.su, j.su), F = dot(j.su, j.sv), G = dot(j.sv, j.sv);
    const Vec3<T> n = cross(j.su, j.sv);
    const T W = E * G - F * F;
    const T len = sqrt(W);
    const T e = dot(j.suu, n) / len, f = dot(j.suv, n) / len, g = dot(j.svv, n) / len;
    return {(e * g - f * f) / W, (e * G - T(2.0) * f * F + E * g) / (T(2.0) * W)};
}

/// Curvature of facet S_facet (straight embedding) at a single (u, v) point.
/// Generic in the scalar so nested duals yield exact field derivatives.
template <class T>
Curvatures<T> curvature_at(const ConfocalPair& pair, int facet, const T& u, const T& v) {
    return curvature_from_jet(straight_lift(ruling_jet(pair, facet, u, v), u));
}

/// Closed-form curvature of facet S_1 in terms of s_i, c_i, d_i = sn, cn,
/// dn(i K / 3 + u | m) at i = 4, 8; other facets are u-shifts of S_1 by
/// (facet - 1) du. f and Delta are the second-form coefficient and metric
/// determinant before normalization: K = -(f / Delta)^2, H = H_n Delta^{-3/2} / 2.
template <class T>
Curvatures<T> curvature_closed_form(const ConfocalPair& pair, int facet, const T& u, const T& v) {
    using std::pow;
    const T w = u + T((facet - 1) * pair.du);
    auto [s4, c4, d4] = jacobi_sn_cn_dn(w + T(4.0 * pair.K / 3.0), pair.m);
    auto [s8, c8, d8] = jacobi_sn_cn_dn(w + T(8.0 * pair.K / 3.0), pair.m);
    const T a(pair.a), b(pair.b), m(pair.m);
    const T a2 = a * a, b2 = b * b;
    const T one(1.0), two(2.0), half(0.5);

    const T chord = c4 * c8 + s4 * s8 - one;  // cos of the amplitude gap, minus one
    const T f = -a * b * (d4 + d8) * chord;

    const T lever = (((a2 - b2) * s4 - s8 * a2) * c4 + s4 * b2 * c8) * (v - one) * d4 -
                    v * d8 * (-s8 * b2 * c4 + (s4 * a2 + (-a2 + b2) * s8) * c8);
    const T bend = m * a * b * (s4 - s8) *
                       (two * c4 * s4 * s8 + two * c4 * s8 * s8 - two * c8 * s4 * s4 -
                        two * c8 * s4 * s8 - c4 + c8) * v -
                   a * b * (two * m * c4 * s4 * s4 * s8 - two * c8 * m * s4 * s4 * s4 - m * c4 * s4 +
                            m * c8 * s4 - c4 * s8 + c8 * s4);
    const T base2 = (a2 - b2) * s4 * s4 - two * s4 * s8 * a2 + (a2 - b2) * s8 * s8 -
                    two * b2 * (c4 * c8 - one);
    const T Hn = two * a * b * (d4 + d8) * chord * lever + bend * base2;

    const T twist = (m * s4 * s4 + m * s8 * s8 - two * d4 * d8 - two) * v * v +
                    (-two * m * s4 * s4 + two * d4 * d8 + two) * v + m * s4 * s4 - one;
    const T gap = (s8 * s8 - half) * s4 * s4 + s8 * (c4 * c8 - one) * s4 - half * s8 * s8 -
                  c8 * c4 + one;
    const T Delta = (-two * twist * gap * a2 - s8 * s8 - two * c8 * c4 - s4 * s4 + two) * b2 +
                    a2 * (s8 - s4) * (s8 - s4);
    if (!(value_of(Delta) > 0.0))
        throw NumericError("curvature_closed_form: non-positive metric determinant " +
                           std::to_string(value_of(Delta)));
    const T ratio = f / Delta;
    return {-(ratio * ratio), Hn * pow(Delta, -1.5) / two};
}

/// One grid node of a sampled facet.
struct SurfaceNode {
    Point3 position;
    Point3 du, dv;
    Point3 duu, duv, dvv;
    Point3 normal;
    double E = 0.0, F = 0.0, G = 0.0;
    double e = 0.0, f = 0.0, g = 0.0;
};

/// A sampled facet on u_i = i T / nu (i = 0..nu, the last row closes the
/// period) and v_j = j / (nv - 1).
struct SurfacePatch {
    int facet = 1;
    Embedding embedding = Embedding::straight;
    double major_radius = 0.0;
    int nu = 0, nv = 0;
    std::vector<double> u, v;
    std::vector<SurfaceNode> nodes;  // row-major, (nu + 1) x nv
    bool forms_filled = false;

    int rows() const { return nu + 1; }
    const SurfaceNode& node(int i, int j) const { return nodes[static_cast<size_t>(i) * nv + j]; }
    SurfaceNode& node(int i, int j) { return nodes[static_cast<size_t>(i) * nv + j]; }
};

inline Point3 unit(const Point3& x) { return x / norm(x); }

inline SurfacePatch patch(const ConfocalPair& pair, int facet, int nu, int nv,
                          Embedding embedding = Embedding::straight, double major_radius = 0.0) {
    if (facet < 1 || facet > 3) throw DomainError("patch: facet must be 1, 2 or 3");
    if (nu < 8 || nv < 2) throw DomainError("patch: need nu >= 8 and nv >= 2");
    if (!(pair.a > pair.b && pair.b > 0.0)) throw DomainError("patch: degenerate confocal pair");
    SurfacePatch sp;
    sp.facet = facet;
    sp.embedding = embedding;
    sp.major_radius = major_radius > 0.0 ? major_radius : default_major_radius(pair);
    sp.nu = nu;
    sp.nv = nv;
    const double T = pair.period();
    for (int i = 0; i <= nu; ++i) sp.u.push_back(i == nu ? T : i * T / nu);
    for (int j = 0; j < nv; ++j) sp.v.push_back(j == nv - 1 ? 1.0 : static_cast<double>(j) / (nv - 1));
    sp.nodes.resize(static_cast<size_t>(nu + 1) * nv);
    for (int i = 0; i <= nu; ++i) {
        for (int j = 0; j < nv; ++j) {
            const double u = sp.u[i], v = sp.v[j];
            auto q = ruling_jet(pair, facet, u, v);
            SurfaceJet<double> s = embedding == Embedding::straight
                                       ? straight_lift(q, u)
                                       : toroidal_lift(q, u, T, sp.major_radius);
            SurfaceNode& n = sp.node(i, j);
            n.position = s.s;
            n.du = s.su;
            n.dv = s.sv;
            n.duu = s.suu;
            n.duv = s.suv;
            n.dvv = s.svv;
            n.normal = unit(cross(s.su, s.sv));
        }
    }
    return sp;
}

/// First and second fundamental form coefficients at every node.
inline SurfacePatch& fundamental_forms(SurfacePatch& sp) {
    for (int i = 0; i < sp.rows(); ++i) {
        for (int j = 0; j < sp.nv; ++j) {
            SurfaceNode& n = sp.node(i, j);
            n.E = dot(n.du, n.du);
            n.F = dot(n.du, n.dv);
            n.G = dot(n.dv, n.dv);
            if (!(n.E * n.G - n.F * n.F > 0.0))
                throw NumericError("fundamental_forms: EG - F^2 <= 0 at node (" + std::to_string(i) +
                                   ", " + std::to_string(j) + ")");
            n.e = dot(n.duu, n.normal);
            n.f = dot(n.duv, n.normal);
            n.g = dot(n.dvv, n.normal);
        }
    }
    sp.forms_filled = true;
    return sp;
}

inline SurfacePatch fundamental_forms(SurfacePatch&& sp) { return std::move(fundamental_forms(sp)); }

enum class CurvatureKind { gaussian, mean };

inline const char* to_string(CurvatureKind k) { return k == CurvatureKind::gaussian ? "gaussian" : "mean"; }

enum class MorseType { minimum, maximum, saddle, degenerate };

inline const char* to_string(MorseType t) {
    switch (t) {
        case MorseType::minimum: return "min";
        case MorseType::maximum: return "max";
        case MorseType::saddle: return "saddle";
        default: return "degenerate";
    }
}

struct CriticalPoint {
    double u = 0.0, v = 0.0;
    double value = 0.0;
    MorseType morse_type = MorseType::degenerate;
    std::array<double, 2> hessian_eigs{};
    double hessian_det = 0.0;
    double gradient_norm = 0.0;
    int iterations = 0;
    bool converged = false;
    std::string diagnostic;
};

/// A curvature function sampled on a patch grid ((nu + 1) x nv, row-major).
struct CurvatureField {
    CurvatureKind which = CurvatureKind::gaussian;
    int facet = 1;
    int nu = 0, nv = 0;
    std::vector<double> u, v;
    std::vector<double> values;
    std::vector<CriticalPoint> critical_points;

    int rows() const { return static_cast<int>(u.size()); }
    double at(int i, int j) const { return values[static_cast<size_t>(i) * nv + j]; }
    double max() const { return *std::max_element(values.begin(), values.end()); }
    double min() const { return *std::min_element(values.begin(), values.end()); }
};

struct CurvatureFields {
    CurvatureField gaussian;
    CurvatureField mean;
};

/// Gaussian and mean curvature from the stored fundamental forms.
inline CurvatureFields curvature_numeric(const SurfacePatch& sp) {
    if (!sp.forms_filled) throw DomainError("curvature_numeric: fundamental forms not computed");
    CurvatureFields out;
    for (auto* fld : {&out.gaussian, &out.mean}) {
        fld->facet = sp.facet;
        fld->nu = sp.nu;
        fld->nv = sp.nv;
        fld->u = sp.u;
        fld->v = sp.v;
        fld->values.reserve(sp.nodes.size());
    }
    out.gaussian.which = CurvatureKind::gaussian;
    out.mean.which = CurvatureKind::mean;
    for (const SurfaceNode& n : sp.nodes) {
        const double W = n.E * n.G - n.F * n.F;
        out.gaussian.values.push_back((n.e * n.g - n.f * n.f) / W);
        out.mean.values.push_back((n.e * n.G - 2.0 * n.f * n.F + n.E * n.g) / (2.0 * W));
    }
    return out;
}

}  // namespace psts
