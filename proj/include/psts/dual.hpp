#pragma once

#include <cmath>
#include <type_traits>

namespace psts {

/// Forward-mode dual number `val + der * eps` with `eps^2 = 0`.
///
/// Nesting `Dual<Dual<double>>` yields mixed second derivatives; everything
/// downstream of the elliptic functions is written against a generic scalar
/// so the same code path evaluates values, gradients and Hessians.
template <class T>
struct Dual {
    T val{};
    T der{};

    constexpr Dual() = default;
    constexpr Dual(double v) : val(v), der(0.0) {}  // NOLINT: implicit lift of constants
    constexpr Dual(T v, T d) : val(v), der(d) {}

    Dual& operator+=(const Dual& o) { val += o.val; der += o.der; return *this; }
    Dual& operator-=(const Dual& o) { val -= o.val; der -= o.der; return *this; }
    Dual& operator*=(const Dual& o) { *this = *this * o; return *this; }
    Dual& operator/=(const Dual& o) { *this = *this / o; return *this; }

    friend Dual operator+(const Dual& a, const Dual& b) { return {a.val + b.val, a.der + b.der}; }
    friend Dual operator-(const Dual& a, const Dual& b) { return {a.val - b.val, a.der - b.der}; }
    friend Dual operator-(const Dual& a) { return {-a.val, -a.der}; }
    friend Dual operator*(const Dual& a, const Dual& b) {
        return {a.val * b.val, a.der * b.val + a.val * b.der};
    }
    friend Dual operator/(const Dual& a, const Dual& b) {
        T inv = T(1.0) / b.val;
        return {a.val * inv, (a.der * b.val - a.val * b.der) * inv * inv};
    }
    friend bool operator<(const Dual& a, const Dual& b) { return a.val < b.val; }
    friend bool operator>(const Dual& a, const Dual& b) { return a.val > b.val; }
};

template <class T>
struct is_dual : std::false_type {};
template <class T>
struct is_dual<Dual<T>> : std::true_type {};

/// Underlying double of a (possibly nested) dual.
inline double value_of(double x) { return x; }
template <class T>
double value_of(const Dual<T>& x) { return value_of(x.val); }

template <class T>
Dual<T> sqrt(const Dual<T>& x) {
    using std::sqrt;
    T s = sqrt(x.val);
    return {s, x.der / (T(2.0) * s)};
}

template <class T>
Dual<T> sin(const Dual<T>& x) {
    using std::sin, std::cos;
    return {sin(x.val), cos(x.val) * x.der};
}

template <class T>
Dual<T> cos(const Dual<T>& x) {
    using std::sin, std::cos;
    return {cos(x.val), -sin(x.val) * x.der};
}

template <class T>
Dual<T> pow(const Dual<T>& x, double p) {
    using std::pow;
    return {pow(x.val, p), T(p) * pow(x.val, p - 1.0) * x.der};
}

/// First and second derivatives of a scalar bivariate function, evaluated via
/// three nested-dual passes.
struct Jet2 {
    double value = 0.0;
    double du = 0.0, dv = 0.0;
    double duu = 0.0, duv = 0.0, dvv = 0.0;
};

template <class F>
Jet2 second_order_jet(F&& f, double u, double v) {
    using D2 = Dual<Dual<double>>;
    auto seed = [](double x, bool outer, bool inner) {
        return D2{Dual<double>{x, inner ? 1.0 : 0.0}, Dual<double>{outer ? 1.0 : 0.0, 0.0}};
    };
    Jet2 j;
    D2 uu = f(seed(u, true, true), seed(v, false, false));
    D2 uv = f(seed(u, true, false), seed(v, false, true));
    D2 vv = f(seed(u, false, false), seed(v, true, true));
    j.value = uu.val.val;
    j.du = uu.val.der;
    j.dv = vv.val.der;
    j.duu = uu.der.der;
    j.duv = uv.der.der;
    j.dvv = vv.der.der;
    return j;
}

}  // namespace psts
