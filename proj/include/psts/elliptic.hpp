#pragma once

// Jacobi elliptic functions and the elliptic integral of the first kind.
//
// Everything is computed with the arithmetic-geometric mean (descending
// Landen transformation). The parameter convention is m = k^2 throughout;
// EllipticModulus is the only place that converts between the two.

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "psts/dual.hpp"
#include "psts/errors.hpp"

namespace psts {

class EllipticModulus {
public:
    static EllipticModulus from_k(double k) {
        if (!(k >= 0.0 && k <= 1.0))
            throw DomainError("elliptic modulus k must lie in [0,1], got " + std::to_string(k));
        return EllipticModulus(k, k * k);
    }
    static EllipticModulus from_m(double m) {
        if (!(m >= 0.0 && m <= 1.0))
            throw DomainError("elliptic parameter m must lie in [0,1], got " + std::to_string(m));
        return EllipticModulus(std::sqrt(m), m);
    }

    double k() const { return k_; }
    double m() const { return m_; }

private:
    EllipticModulus(double k, double m) : k_(k), m_(m) {}
    double k_;
    double m_;
};

namespace detail {

inline constexpr double kAgmTolerance = 1e-15;
inline constexpr int kMaxAgmSteps = 40;

inline void require_parameter(double m, const char* who) {
    if (!(m >= 0.0 && m < 1.0))
        throw DomainError(std::string(who) + ": parameter m must lie in [0,1), got " +
                          std::to_string(m));
}

/// AGM ladder a_n, c_n for (1, sqrt(1-m)); returns the number of steps taken.
struct AgmLadder {
    std::array<double, kMaxAgmSteps + 1> a{};
    std::array<double, kMaxAgmSteps + 1> c{};
    int steps = 0;
};

inline AgmLadder agm_ladder(double m) {
    AgmLadder l;
    double a = 1.0;
    double b = std::sqrt(1.0 - m);
    double c = std::sqrt(m);
    l.a[0] = a;
    l.c[0] = c;
    int n = 0;
    while (std::abs(c) > kAgmTolerance * a && n < kMaxAgmSteps) {
        double an = 0.5 * (a + b);
        c = 0.5 * (a - b);
        b = std::sqrt(a * b);
        a = an;
        ++n;
        l.a[n] = a;
        l.c[n] = c;
    }
    l.steps = n;
    return l;
}

/// Amplitude by backward recursion; continuous and increasing in u.
inline double amplitude(double u, double m) {
    if (m == 0.0) return u;
    AgmLadder l = agm_ladder(m);
    double phi = std::ldexp(l.a[l.steps] * u, l.steps);
    for (int j = l.steps; j >= 1; --j)
        phi = 0.5 * (phi + std::asin(l.c[j] / l.a[j] * std::sin(phi)));
    return phi;
}

}  // namespace detail

/// Complete integral K(k) = F(pi/2, k).
inline double complete_K(EllipticModulus mod) {
    if (mod.m() >= 1.0) throw DomainError("complete_K: diverges at k = 1");
    double a = 1.0;
    double b = std::sqrt(1.0 - mod.m());
    for (int n = 0; n < detail::kMaxAgmSteps && std::abs(a - b) > detail::kAgmTolerance * a; ++n) {
        double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return std::numbers::pi / (2.0 * a);
}

/// Incomplete integral F(phi, k) for any real phi (odd, quasi-periodic with 2K per pi).
inline double incomplete_K(double phi, EllipticModulus mod) {
    if (mod.m() >= 1.0) throw DomainError("incomplete_K: parameter must be < 1");
    using std::numbers::pi;
    const double turns = std::round(phi / pi);
    double r = phi - turns * pi;  // r in [-pi/2, pi/2]
    const double kc = complete_K(mod);
    double base = 2.0 * turns * kc;
    if (r == 0.0) return base;
    const double sgn = r < 0.0 ? -1.0 : 1.0;
    r = std::abs(r);
    if (r >= 0.5 * pi) return base + sgn * kc;

    double a = 1.0;
    double b = std::sqrt(1.0 - mod.m());
    double c = mod.k();
    double scale = 1.0;
    while (std::abs(c) > detail::kAgmTolerance * a && scale < 1e12) {
        // tan(phi_{n+1} - phi_n) = (b_n / a_n) tan(phi_n), on the branch nearest phi_n
        double psi = std::atan2(b * std::sin(r), a * std::cos(r));
        psi = r + std::remainder(psi - r, 2.0 * pi);
        r += psi;
        double an = 0.5 * (a + b);
        c = 0.5 * (a - b);
        b = std::sqrt(a * b);
        a = an;
        scale *= 2.0;
    }
    return base + sgn * r / (scale * a);
}

template <class T>
struct SnCnDn {
    T sn, cn, dn;
};

/// sn, cn, dn of (u | m) evaluated together. Works for dual arguments, in
/// which case derivatives follow sn' = cn dn, cn' = -sn dn, dn' = -m sn cn.
inline SnCnDn<double> jacobi_sn_cn_dn(double u, double m) {
    detail::require_parameter(m, "jacobi_sn_cn_dn");
    if (m == 0.0) return {std::sin(u), std::cos(u), 1.0};
    double phi = detail::amplitude(u, m);
    double s = std::sin(phi);
    return {s, std::cos(phi), std::sqrt(1.0 - m * s * s)};
}

template <class T>
SnCnDn<Dual<T>> jacobi_sn_cn_dn(const Dual<T>& u, double m) {
    auto [s, c, d] = jacobi_sn_cn_dn(u.val, m);
    return {Dual<T>{s, c * d * u.der}, Dual<T>{c, -s * d * u.der}, Dual<T>{d, -m * s * c * u.der}};
}

/// Amplitude am(u | m), the inverse of incomplete_K in phi.
inline double jacobi_am(double u, double m) {
    detail::require_parameter(m, "jacobi_am");
    return detail::amplitude(u, m);
}

template <class T>
Dual<T> jacobi_am(const Dual<T>& u, double m) {
    auto d = jacobi_sn_cn_dn(u.val, m).dn;
    return {jacobi_am(u.val, m), d * u.der};
}

}  // namespace psts
