#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "psts/elliptic.hpp"

using namespace psts;
using std::numbers::pi;

namespace {

// F(phi | m) straight from the defining integral.
double quadrature_F(double phi, double m) {
    auto integrand = [m](double t) { return 1.0 / std::sqrt(1.0 - m * std::sin(t) * std::sin(t)); };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, phi, 15, 1e-15);
}

}  // namespace

TEST(Elliptic, CompleteIntegralAtZeroIsHalfPi) {
    EXPECT_NEAR(complete_K(EllipticModulus::from_m(0.0)), pi / 2, 1e-15);
}

TEST(Elliptic, CompleteIntegralMatchesQuadrature) {
    for (double k : {1.0 / std::sqrt(2.0), 0.3, 0.9, 0.99}) {
        const double m = k * k;
        EXPECT_NEAR(complete_K(EllipticModulus::from_k(k)), quadrature_F(pi / 2, m), 1e-12) << "k=" << k;
    }
}

TEST(Elliptic, LemniscaticValue) {
    // K(1/sqrt 2) = Gamma(1/4)^2 / (4 sqrt pi)
    const double expected = std::pow(std::tgamma(0.25), 2) / (4.0 * std::sqrt(pi));
    EXPECT_NEAR(complete_K(EllipticModulus::from_k(1.0 / std::sqrt(2.0))), expected, 1e-14);
}

TEST(Elliptic, IncompleteIntegralMatchesQuadrature) {
    EXPECT_NEAR(incomplete_K(0.7, EllipticModulus::from_k(0.8)), quadrature_F(0.7, 0.64), 1e-13);
    for (double phi : {-2.5, 0.1, 1.2, 1.5, 3.0, 5.0}) {
        for (double m : {0.0, 0.2, 0.75, 0.97}) {
            EXPECT_NEAR(incomplete_K(phi, EllipticModulus::from_m(m)), quadrature_F(phi, m), 1e-12)
                << "phi=" << phi << " m=" << m;
        }
    }
}

TEST(Elliptic, IncompleteAtHalfPiIsComplete) {
    auto mod = EllipticModulus::from_m(0.5);
    EXPECT_NEAR(incomplete_K(pi / 2, mod), complete_K(mod), 1e-14);
    EXPECT_NEAR(incomplete_K(pi, mod), 2.0 * complete_K(mod), 1e-13);
}

TEST(Elliptic, ModulusConversion) {
    auto mod = EllipticModulus::from_k(0.6);
    EXPECT_DOUBLE_EQ(mod.m(), 0.36);
    EXPECT_DOUBLE_EQ(EllipticModulus::from_m(0.36).k(), 0.6);
}

TEST(Elliptic, PythagoreanIdentities) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-20.0, 20.0), M(0.0, 0.999);
    for (int n = 0; n < 2000; ++n) {
        const double u = U(rng), m = M(rng);
        auto [s, c, d] = jacobi_sn_cn_dn(u, m);
        EXPECT_LE(std::abs(s * s + c * c - 1.0), 1e-12);
        EXPECT_LE(std::abs(d * d + m * s * s - 1.0), 1e-12);
    }
}

TEST(Elliptic, AgreesWithIndependentLibrary) {
    for (double k : {0.1, 0.5, 0.866, 0.95}) {
        for (double u : {-3.0, 0.2, 1.0, 2.7, 8.0}) {
            double cn_ref, dn_ref;
            const double sn_ref = boost::math::jacobi_elliptic(k, u, &cn_ref, &dn_ref);
            auto [s, c, d] = jacobi_sn_cn_dn(u, k * k);
            EXPECT_NEAR(s, sn_ref, 1e-13);
            EXPECT_NEAR(c, cn_ref, 1e-13);
            EXPECT_NEAR(d, dn_ref, 1e-13);
        }
    }
}

TEST(Elliptic, ParameterZeroIsTrigonometric) {
    for (double u : {-1.0, 0.4, 3.0}) {
        auto [s, c, d] = jacobi_sn_cn_dn(u, 0.0);
        EXPECT_NEAR(s, std::sin(u), 1e-15);
        EXPECT_NEAR(c, std::cos(u), 1e-15);
        EXPECT_EQ(d, 1.0);
    }
}

TEST(Elliptic, DerivativeIdentitiesByFiniteDifference) {
    const double h = 1e-6;
    for (double m : {0.1, 0.5, 0.9}) {
        for (double u : {-1.3, 0.25, 2.0, 5.5}) {
            auto p = jacobi_sn_cn_dn(u + h, m), q = jacobi_sn_cn_dn(u - h, m), c = jacobi_sn_cn_dn(u, m);
            EXPECT_NEAR((p.sn - q.sn) / (2 * h), c.cn * c.dn, 1e-6);
            EXPECT_NEAR((p.cn - q.cn) / (2 * h), -c.sn * c.dn, 1e-6);
            EXPECT_NEAR((p.dn - q.dn) / (2 * h), -m * c.sn * c.cn, 1e-6);
        }
    }
}

TEST(Elliptic, DualDerivativesMatchIdentities) {
    const double m = 0.7, u = 0.9;
    auto r = jacobi_sn_cn_dn(Dual<double>{u, 1.0}, m);
    auto c = jacobi_sn_cn_dn(u, m);
    EXPECT_DOUBLE_EQ(r.sn.der, c.cn * c.dn);
    EXPECT_DOUBLE_EQ(r.cn.der, -c.sn * c.dn);
    EXPECT_DOUBLE_EQ(r.dn.der, -m * c.sn * c.cn);
    EXPECT_DOUBLE_EQ(jacobi_am(Dual<double>{u, 1.0}, m).der, c.dn);
}

TEST(Elliptic, Periodicity) {
    for (double m : {0.2, 0.75, 0.95}) {
        const double K = complete_K(EllipticModulus::from_m(m));
        for (double u : {0.0, 0.3, 1.7, -2.2}) {
            auto a = jacobi_sn_cn_dn(u, m), b = jacobi_sn_cn_dn(u + 4 * K, m), h = jacobi_sn_cn_dn(u + 2 * K, m);
            EXPECT_NEAR(a.sn, b.sn, 1e-11);
            EXPECT_NEAR(a.cn, b.cn, 1e-11);
            EXPECT_NEAR(a.dn, h.dn, 1e-11);
            EXPECT_NEAR(a.sn, -h.sn, 1e-11);
        }
        auto q = jacobi_sn_cn_dn(K, m);
        EXPECT_NEAR(q.sn, 1.0, 1e-14);
        EXPECT_NEAR(q.cn, 0.0, 1e-14);
        EXPECT_NEAR(q.dn, std::sqrt(1 - m), 1e-14);
    }
}

TEST(Elliptic, AmplitudeInvertsIncompleteIntegral) {
    for (double m : {0.0, 0.3, 0.75, 0.99}) {
        auto mod = EllipticModulus::from_m(m);
        for (double u : {-7.0, -0.5, 0.0, 0.8, 3.3, 12.0}) {
            const double phi = jacobi_am(u, m);
            EXPECT_NEAR(incomplete_K(phi, mod), u, 1e-11 * std::max(1.0, std::abs(u))) << "m=" << m;
            EXPECT_NEAR(std::sin(phi), jacobi_sn_cn_dn(u, m).sn, 1e-14);
        }
    }
}

TEST(Elliptic, AmplitudeIsContinuousAndIncreasing) {
    const double m = 0.9;
    double prev = jacobi_am(-10.0, m);
    for (int k = 1; k <= 2000; ++k) {
        const double now = jacobi_am(-10.0 + k * 0.01, m);
        EXPECT_GT(now, prev);
        EXPECT_LT(now - prev, 0.02);
        prev = now;
    }
}

TEST(Elliptic, DomainErrors) {
    EXPECT_THROW(EllipticModulus::from_k(1.5), DomainError);
    EXPECT_THROW(EllipticModulus::from_m(-0.1), DomainError);
    EXPECT_THROW(complete_K(EllipticModulus::from_m(1.0)), DomainError);
    EXPECT_THROW(jacobi_sn_cn_dn(0.3, 1.0), DomainError);
    EXPECT_THROW(jacobi_sn_cn_dn(0.3, -0.2), DomainError);
    EXPECT_THROW(jacobi_am(0.3, 2.0), DomainError);
}
