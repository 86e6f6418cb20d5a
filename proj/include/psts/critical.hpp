#pragma once

// Critical points of a curvature field on one facet: discrete detection on
// the sampled grid, then damped Newton on the exact field derivatives.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "psts/confocal.hpp"
#include "psts/dual.hpp"
#include "psts/surface.hpp"

namespace psts {

struct CriticalSearchOptions {
    double step_tolerance = 1e-10;
    int max_iterations = 50;
    /// |lambda_small| <= degeneracy_ratio * |lambda_large| counts as degenerate.
    double degeneracy_ratio = 1e-6;
};

/// Value, gradient and Hessian of the chosen curvature at (u, v).
inline Jet2 curvature_jet(const ConfocalPair& pair, int facet, CurvatureKind which, double u, double v) {
    return second_order_jet(
        [&](const auto& uu, const auto& vv) {
            auto c = curvature_at(pair, facet, uu, vv);
            return which == CurvatureKind::gaussian ? c.gaussian : c.mean;
        },
        u, v);
}

inline std::array<double, 2> symmetric_eigenvalues(double a, double b, double d) {
    const double mean = 0.5 * (a + d);
    const double r = std::hypot(0.5 * (a - d), b);
    return {mean - r, mean + r};
}

inline MorseType classify(const std::array<double, 2>& eig, double degeneracy_ratio) {
    const double small = std::min(std::abs(eig[0]), std::abs(eig[1]));
    const double large = std::max(std::abs(eig[0]), std::abs(eig[1]));
    if (!(small > degeneracy_ratio * large)) return MorseType::degenerate;
    if (eig[0] > 0.0) return MorseType::minimum;
    if (eig[1] < 0.0) return MorseType::maximum;
    return MorseType::saddle;
}

namespace detail {

enum class GridKind { none, minimum, maximum, saddle };

// 8-neighbour ring test; u wraps, v does not (only interior columns are scanned).
inline GridKind grid_kind(const CurvatureField& f, int i, int j) {
    static constexpr int di[8] = {-1, -1, -1, 0, 1, 1, 1, 0};
    static constexpr int dj[8] = {-1, 0, 1, 1, 1, 0, -1, -1};
    const int nrows = f.nu;
    const double c = f.at(i, j);
    bool up[8];
    int n_up = 0;
    for (int k = 0; k < 8; ++k) {
        int ii = (i + di[k] + nrows) % nrows;
        up[k] = f.at(ii, j + dj[k]) > c;
        n_up += up[k];
    }
    if (n_up == 8) return GridKind::minimum;
    if (n_up == 0) return GridKind::maximum;
    int changes = 0;
    for (int k = 0; k < 8; ++k) changes += up[k] != up[(k + 7) % 8];
    return changes >= 4 ? GridKind::saddle : GridKind::none;
}

inline double periodic_gap(double a, double b, double period) {
    return std::abs(std::remainder(a - b, period));
}

}  // namespace detail

/// Refine one seed with damped Newton on the exact gradient; the step is capped
/// at one grid cell and halved while it fails to reduce |grad|.
inline CriticalPoint refine_critical_point(const ConfocalPair& pair, int facet, CurvatureKind which,
                                           double u, double v, double cell,
                                           const CriticalSearchOptions& opt = {}) {
    const double T = pair.period();
    CriticalPoint cp;
    Jet2 j = curvature_jet(pair, facet, which, u, v);
    for (int it = 1; it <= opt.max_iterations; ++it) {
        cp.iterations = it;
        const double det = j.duu * j.dvv - j.duv * j.duv;
        if (det == 0.0) {
            cp.diagnostic = "singular Hessian during refinement";
            break;
        }
        double su = -(j.dvv * j.du - j.duv * j.dv) / det;
        double sv = -(-j.duv * j.du + j.duu * j.dv) / det;
        const double len = std::hypot(su, sv);
        if (len > cell) {
            su *= cell / len;
            sv *= cell / len;
        }
        const double g0 = std::hypot(j.du, j.dv);
        Jet2 next;
        double nu_ = u, nv_ = v;
        for (int halving = 0; halving < 20; ++halving) {
            nu_ = u + su;
            nv_ = std::clamp(v + sv, 0.0, 1.0);
            next = curvature_jet(pair, facet, which, nu_, nv_);
            if (std::hypot(next.du, next.dv) <= g0) break;
            su *= 0.5;
            sv *= 0.5;
        }
        const double step = std::hypot(nu_ - u, nv_ - v);
        u = nu_;
        v = nv_;
        j = next;
        if (step < opt.step_tolerance || std::hypot(j.du, j.dv) == 0.0) {
            cp.converged = true;
            break;
        }
    }
    if (!cp.converged && cp.diagnostic.empty())
        cp.diagnostic = "Newton did not converge in " + std::to_string(opt.max_iterations) + " iterations";
    if (v <= 0.0 || v >= 1.0) {
        cp.converged = false;
        cp.diagnostic = "refinement left the facet interior (v = " + std::to_string(v) + ")";
    }
    cp.u = u - T * std::floor(u / T);
    if (T - cp.u < 1e-12 * T) cp.u = 0.0;
    cp.v = v;
    cp.value = j.value;
    cp.gradient_norm = std::hypot(j.du, j.dv);
    cp.hessian_eigs = symmetric_eigenvalues(j.duu, j.duv, j.dvv);
    cp.hessian_det = j.duu * j.dvv - j.duv * j.duv;
    cp.morse_type = classify(cp.hessian_eigs, opt.degeneracy_ratio);
    return cp;
}

/// Locate and classify the critical points of a sampled curvature field.
/// Non-converged seeds are kept with a diagnostic rather than dropped.
inline std::vector<CriticalPoint> find_critical_points(const CurvatureField& field, const ConfocalPair& pair,
                                                       int facet, const CriticalSearchOptions& opt = {}) {
    if (field.nu < 64 || field.nv < 17)
        throw DomainError("find_critical_points: grid must be at least 64 x 17");
    const double T = pair.period();
    const double du = T / field.nu;
    const double dv = 1.0 / (field.nv - 1);
    const double cell = std::max(du, dv);
    const double merge = 0.25 * std::min(du, dv);

    std::vector<CriticalPoint> found;
    for (int i = 0; i < field.nu; ++i) {
        for (int j = 1; j + 1 < field.nv; ++j) {
            if (detail::grid_kind(field, i, j) == detail::GridKind::none) continue;
            CriticalPoint cp = refine_critical_point(pair, facet, field.which, field.u[i], field.v[j], cell, opt);
            auto same = std::find_if(found.begin(), found.end(), [&](const CriticalPoint& o) {
                return detail::periodic_gap(o.u, cp.u, T) < merge && std::abs(o.v - cp.v) < merge;
            });
            if (same == found.end()) {
                found.push_back(cp);
            } else if (cp.converged && (!same->converged || cp.gradient_norm < same->gradient_norm)) {
                *same = cp;
            }
        }
    }
    std::sort(found.begin(), found.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
        return a.u < b.u || (a.u == b.u && a.v < b.v);
    });
    return found;
}

}  // namespace psts
