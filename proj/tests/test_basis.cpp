#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "eph/basis.hpp"
#include "eph/error.hpp"
#include "oracle.hpp"

using namespace eph;

namespace {

double max_abs_diff(const BasisVector& a, const std::vector<oracle::Real>& b)
{
    double e = 0.0;
    for (int i = 0; i < a.size(); ++i) e = std::max(e, std::fabs(a[i] - oracle::to_d(b[static_cast<std::size_t>(i)])));
    return e;
}

double max_abs_diff(const BasisVector& a, const BasisVector& b)
{
    double e = 0.0;
    for (int i = 0; i < a.size(); ++i) e = std::max(e, std::fabs(a[i] - b[i]));
    return e;
}

// Mode the basis checks use: closed forms below 20, stable forms above.
EvalMode grid_mode(double w) { return w < 20.0 ? EvalMode::Naive : EvalMode::StableLargeOmega; }

}  // namespace

TEST(ShapeParam, RejectsNonPositive)
{
    EXPECT_THROW(ShapeParam(0.0), DomainError);
    EXPECT_THROW(ShapeParam(-1.0), DomainError);
    EXPECT_THROW(ShapeParam(std::nan("")), DomainError);
    EXPECT_THROW(Space(3, ShapeParam(1.0)), DomainError);
}

TEST(Psi, Endpoints)
{
    for (double w : {0.01, 1.0, 50.0, 1000.0}) {
        const BasisVector a = psi(1, ShapeParam(w), 0.0), b = psi(1, ShapeParam(w), 1.0);
        EXPECT_NEAR(a[0], 1.0, 1e-15);
        EXPECT_EQ(a[1], 0.0);
        EXPECT_EQ(b[0], 0.0);
        EXPECT_NEAR(b[1], 1.0, 1e-15);
    }
}

TEST(Psi, MidpointOmegaOne)
{
    const BasisVector p = psi(1, ShapeParam(1.0), 0.5);
    const double ref = oracle::to_d(sinh(oracle::R(0.25)) / sinh(oracle::R(0.5)));
    EXPECT_NEAR(p[0], ref, 1e-15);
    EXPECT_NEAR(p[1], ref, 1e-15);
}

TEST(Psi, AgainstOracle)
{
    for (double w : {0.01, 0.5, 3.0, 40.0}) {
        for (double t : {0.1, 0.37, 0.8}) {
            const auto o = oracle::psi1(w, t);
            const BasisVector p = psi(1, ShapeParam(w), t);
            EXPECT_NEAR(p[0], oracle::to_d(o[0]), 1e-15);
            EXPECT_NEAR(p[1], oracle::to_d(o[1]), 1e-15);
        }
    }
    // psi_{.,2} is varphi_{.,1}
    const BasisVector p2 = psi(2, ShapeParam(2.0), 0.3), v1 = varphi(1, ShapeParam(2.0), 0.3);
    EXPECT_EQ(p2.size(), 3);
    EXPECT_LT(max_abs_diff(p2, v1), 1e-16);
}

TEST(Psi, DomainErrors)
{
    EXPECT_THROW(psi(1, ShapeParam(1.0), -0.01), DomainError);
    EXPECT_THROW(varphi(2, ShapeParam(1.0), 1.5), DomainError);
    EXPECT_THROW(phi(1, ShapeParam(1.0), 1.0001, EvalMode::Auto), DomainError);
}

TEST(Varphi, EndpointsAndSum)
{
    const BasisVector v = varphi(1, ShapeParam(3.0), 0.0);
    EXPECT_EQ(v[0], 1.0);
    EXPECT_EQ(v[1], 0.0);
    EXPECT_EQ(v[2], 0.0);
    EXPECT_NEAR(varphi(1, ShapeParam(5.0), 0.37).sum(), 1.0, 1e-15);
}

TEST(Varphi, MatchesCoshFormsAndProducts)
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double w : {0.05, 1.0, 7.0, 45.0}) {
        for (int k = 0; k < 20; ++k) {
            const double t = u(rng);
            for (int m = 1; m <= 2; ++m) {
                const BasisVector v = varphi(m, ShapeParam(w), t);
                EXPECT_LT(max_abs_diff(v, oracle::varphi(m, w, t)), 2e-15) << "m=" << m << " w=" << w;
                EXPECT_NEAR(v.sum(), 1.0, 1e-13);
            }
            const BasisVector p = psi(2, ShapeParam(w), t), v2 = varphi(2, ShapeParam(w), t);
            EXPECT_NEAR(v2[1], 2.0 * p[0] * p[1], 1e-15);
        }
    }
}

TEST(Varphi, SquaringIdentities)
{
    for (double w : {0.3, 2.0, 15.0}) {
        const ConstantsM1 k1 = constants_m1(ShapeParam(w));
        const ConstantsM2 k2 = constants_m2(ShapeParam(w));
        for (double t : {0.05, 0.4, 0.77}) {
            const BasisVector p1 = psi(1, ShapeParam(w), t), v1 = varphi(1, ShapeParam(w), t);
            EXPECT_NEAR(p1[0] * p1[0], v1[0], 1e-11 * v1[0]);
            EXPECT_NEAR(p1[0] * p1[1], 0.5 * k1.c1 * v1[1], 1e-11 * v1[1]);
            const BasisVector p2 = psi(2, ShapeParam(w), t), v2 = varphi(2, ShapeParam(w), t);
            EXPECT_NEAR(p2[1] * p2[1], k2.q0 * v2[2], 1e-11 * v2[2]);
            EXPECT_NEAR(p2[0] * p2[2], 0.5 * k2.q1 * v2[2], 1e-11 * v2[2]);
        }
    }
}

TEST(Phi, EndpointsAllModes)
{
    for (int m = 1; m <= 2; ++m)
        for (double w : {0.01, 0.5, 30.0, 1000.0})
            for (EvalMode mode : {EvalMode::StableLargeOmega, EvalMode::Taylor5, EvalMode::Auto}) {
                const BasisVector a = phi(m, ShapeParam(w), 0.0, mode), b = phi(m, ShapeParam(w), 1.0, mode);
                EXPECT_NEAR(a[0], 1.0, 1e-14);
                EXPECT_NEAR(b[2 * m + 1], 1.0, 1e-14);
                for (int i = 1; i < 2 * m + 2; ++i) EXPECT_NEAR(a[i], 0.0, 1e-14);
            }
}

TEST(Phi, ClosedFormValueOmegaOne)
{
    const double ref = oracle::to_d((sinh(oracle::R(0.5)) - 0.5) / (sinh(oracle::R(1.0)) - 1));
    EXPECT_NEAR(ref, 0.120406, 1e-6);
    for (EvalMode mode : {EvalMode::Naive, EvalMode::StableLargeOmega, EvalMode::Auto})
        EXPECT_NEAR(phi(1, ShapeParam(1.0), 0.5, mode)[3], ref, 1e-14);
}

TEST(Phi, AgainstOracle)
{
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int m = 1; m <= 2; ++m) {
        for (double w : {0.05, 0.3, 1.0, 3.0, 10.0, 50.0}) {
            const Space blended(m, ShapeParam(w));
            const Space verbatim(m, ShapeParam(w), StableVariant::Verbatim);
            for (int k = 0; k < 25; ++k) {
                const double t = u(rng);
                const auto o = oracle::phi(m, w, t);
                EXPECT_LT(max_abs_diff(blended.phi(t, EvalMode::Auto), o), 1e-11) << "m=" << m << " w=" << w;
                if (w >= 2.0) EXPECT_LT(max_abs_diff(verbatim.phi_stable(t), o), 1e-13) << "m=" << m << " w=" << w;
                if (w >= 0.3 && w <= 5.0) EXPECT_LT(max_abs_diff(blended.phi_naive(t), o), 1e-10) << "m=" << m << " w=" << w;
            }
        }
    }
}

TEST(Phi, LargeOmegaStableIsPartitionOfUnity)
{
    for (int m = 1; m <= 2; ++m) {
        const Space sp(m, ShapeParam(200.0));
        for (int k = 0; k <= 200; ++k) {
            const BasisVector p = sp.phi(k / 200.0, EvalMode::StableLargeOmega);
            for (double x : p) {
                EXPECT_TRUE(std::isfinite(x));
                EXPECT_GE(x, 0.0);
                EXPECT_LE(x, 1.0);
            }
            EXPECT_NEAR(p.sum(), 1.0, 1e-13);
        }
    }
}

TEST(Phi, NaiveOverflowHazard)
{
    EXPECT_THROW(phi(1, ShapeParam(701.0), 0.5, EvalMode::Naive), OverflowHazard);
    EXPECT_THROW(phi(2, ShapeParam(351.0), 0.5, EvalMode::Naive), OverflowHazard);
    EXPECT_NO_THROW(phi(1, ShapeParam(701.0), 0.5, EvalMode::StableLargeOmega));
}

TEST(Phi, GridInvariants)
{
    for (int m = 1; m <= 2; ++m) {
        for (double w : {0.5, 1.0, 5.0, 20.0, 100.0, 1000.0}) {
            const Space sp(m, ShapeParam(w));
            const EvalMode mode = grid_mode(w);
            const int n = 2 * m + 2;
            double pu = 0.0, sym = 0.0, vpu = 0.0;
            for (int k = 0; k <= 1000; ++k) {
                const double t = k / 1000.0;
                const BasisVector p = sp.phi(t, mode), q = sp.phi(1.0 - t, mode), v = sp.varphi(t);
                for (int i = 0; i < n; ++i) {
                    EXPECT_GE(p[i], 0.0);
                    sym = std::max(sym, std::fabs(p[i] - q[n - 1 - i]));
                }
                for (double x : v) EXPECT_GE(x, 0.0);
                pu = std::max(pu, std::fabs(p.sum() - 1.0));
                vpu = std::max(vpu, std::fabs(v.sum() - 1.0));
            }
            EXPECT_LT(pu, 1e-11) << "m=" << m << " w=" << w;
            EXPECT_LT(vpu, 1e-11) << "m=" << m << " w=" << w;
            EXPECT_LT(sym, 1e-12) << "m=" << m << " w=" << w;
        }
    }
}

// Phi_i' = varphi_{i-1} / int varphi_{i-1} - varphi_i / int varphi_i
TEST(Phi, DerivativeRelations)
{
    for (int m = 1; m <= 2; ++m) {
        for (double w : {0.5, 1.0, 5.0, 20.0, 100.0, 1000.0}) {
            const Space sp(m, ShapeParam(w));
            const EvalMode mode = grid_mode(w);
            const BasisVector& I = sp.varphi_integrals();
            const int n = 2 * m + 2;
            const double h = 1e-6 * std::min(1.0, 20.0 / w);
            double err = 0.0;
            for (int k = 1; k < 1000; ++k) {
                const double t = k / 1000.0;
                const BasisVector a = sp.phi(t + h, mode), b = sp.phi(t - h, mode), v = sp.varphi(t);
                for (int i = 0; i < n; ++i) {
                    const double exact = (i > 0 ? v[i - 1] / I[i - 1] : 0.0) - (i < n - 1 ? v[i] / I[i] : 0.0);
                    err = std::max(err, std::fabs((a[i] - b[i]) / (2.0 * h) - exact));
                }
            }
            EXPECT_LT(err, 1e-5) << "m=" << m << " w=" << w;
        }
    }
}

// int_0^t varphi_i = I_i sum_{j > i} Phi_j(t)
TEST(Phi, IntegralRelations)
{
    for (int m = 1; m <= 2; ++m) {
        for (double w : {0.5, 4.0, 30.0}) {
            const Space sp(m, ShapeParam(w));
            const BasisVector& I = sp.varphi_integrals();
            for (double t : {0.2, 0.5, 0.9, 1.0}) {
                const BasisVector p = sp.phi(t, EvalMode::Auto);
                for (int i = 0; i <= 2 * m; ++i) {
                    const double q = oracle::integrate([&](double x) { return sp.varphi(x)[i]; }, 0.0, t, 1e-10);
                    double tail = 0.0;
                    for (int j = i + 1; j < 2 * m + 2; ++j) tail += p[j];
                    EXPECT_NEAR(q, I[i] * tail, 1e-8) << "m=" << m << " w=" << w << " i=" << i;
                }
            }
        }
    }
}

TEST(Taylor, ReducesToBernsteinAtZero)
{
    // omega = 0 itself is rejected; at 1e-300 the omega^2 terms vanish in double.
    const Space s1(1, ShapeParam(1e-300)), s2(2, ShapeParam(1e-300));
    for (double t : {0.0, 0.2, 0.5, 0.9}) {
        EXPECT_LT(max_abs_diff(s1.phi_taylor(t), bernstein(3, t)), 1e-15);
        EXPECT_LT(max_abs_diff(s2.phi_taylor(t), bernstein(5, t)), 1e-15);
    }
    const BasisVector mid = s2.phi_taylor(0.5);
    const double expect[6] = {1, 5, 10, 10, 5, 1};
    for (int i = 0; i < 6; ++i) EXPECT_DOUBLE_EQ(mid[i], expect[i] / 32.0);
}

TEST(Taylor, MatchesClosedFormsForSmallOmega)
{
    // The closed forms lose about eps / omega^5 here (1.2e-9 at this point), so the
    // comparison with them is looser than the one with the oracle.
    const BasisVector a = taylor_phi(1, ShapeParam(0.05), 0.3);
    const BasisVector b = phi(1, ShapeParam(0.05), 0.3, EvalMode::Naive);
    EXPECT_LT(max_abs_diff(a, b), 1e-8);
    EXPECT_LT(max_abs_diff(a, oracle::phi(1, 0.05, 0.3)), 1e-12);
    for (int m = 1; m <= 2; ++m)
        for (double w : {0.001, 0.01, 0.05})
            for (int k = 0; k <= 20; ++k) {
                const double t = k / 20.0;
                EXPECT_LT(max_abs_diff(taylor_phi(m, ShapeParam(w), t), oracle::phi(m, w, t)), 1e-10);
            }
}

TEST(Tau, Domain)
{
    EXPECT_THROW(tau(1, ShapeParam(1.0), 0.0, EvalMode::Auto), DomainError);
    EXPECT_THROW(tau(2, ShapeParam(1.0), 1.0, EvalMode::Auto), DomainError);
}

TEST(Tau, DefiningRatio)
{
    const double p0 = oracle::to_d(oracle::phi(1, 1.0, 0.5)[0]);
    for (EvalMode mode : {EvalMode::Naive, EvalMode::StableLargeOmega, EvalMode::Auto})
        EXPECT_NEAR(tau(1, ShapeParam(1.0), 0.5, mode)[0], p0 / 0.25, 1e-13);
}

// The two printed forms of the middle weights, evaluated from Phi in double.
TEST(Tau, MiddleWeightFormsAgree)
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (double w : {0.5, 2.0, 8.0, 30.0}) {
        for (int k = 0; k < 20; ++k) {
            const double t = u(rng), s = 1.0 - t;
            const BasisVector p1 = phi(1, ShapeParam(w), t, EvalMode::Auto);
            const double head1 = (p1[0] + p1[1] - s * s) / (2 * t * s);
            const double tail1 = 1.0 - (p1[2] + p1[3] - t * t) / (2 * t * s);
            EXPECT_NEAR(head1, tail1, 1e-10);
            EXPECT_NEAR(tau(1, ShapeParam(w), t, EvalMode::Auto)[1], head1, 1e-10);
            const BasisVector p2 = phi(2, ShapeParam(w), t, EvalMode::Auto);
            const double den = 6 * t * t * s * s;
            const double head2 = (p2[0] + p2[1] + p2[2] - s * s * s * s - 4 * t * s * s * s) / den;
            const double tail2 = 1.0 - (p2[3] + p2[4] + p2[5] - 4 * t * t * t * s - t * t * t * t) / den;
            EXPECT_NEAR(head2, tail2, 1e-10);
            EXPECT_NEAR(tau(2, ShapeParam(w), t, EvalMode::Auto)[2], head2, 1e-10);
        }
    }
}

// Weights are compared after multiplying by the matching Bernstein value: near
// the ends the ratios amplify rounding by 1/t^4 while the products stay exact.
TEST(Tau, AgainstOracle)
{
    for (int m = 1; m <= 2; ++m) {
        for (double w : {0.05, 0.5, 3.0, 20.0, 50.0}) {
            const Space blended(m, ShapeParam(w));
            const Space verbatim(m, ShapeParam(w), StableVariant::Verbatim);
            for (int k = 1; k < 50; ++k) {
                const double t = k / 50.0;
                const auto o = oracle::tau(m, w, t);
                const BasisVector b = bernstein(2 * m, t);
                const BasisVector a = blended.tau(t, EvalMode::Auto);
                for (int j = 0; j <= 2 * m; ++j) {
                    const double ref = oracle::to_d(o[static_cast<std::size_t>(j)]);
                    EXPECT_NEAR(a[j] * b[j], ref * b[j], 1e-11) << "m=" << m << " w=" << w << " t=" << t;
                    if (w >= 3.0)
                        EXPECT_NEAR(verbatim.tau_stable(t)[j] * b[j], ref * b[j], 1e-13) << "m=" << m << " w=" << w;
                }
            }
        }
    }
}

TEST(Tau, LargeOmegaFinite)
{
    const BasisVector a = tau(2, ShapeParam(150.0), 0.9, EvalMode::StableLargeOmega);
    EXPECT_EQ(a.size(), 5);
    for (double x : a) EXPECT_TRUE(std::isfinite(x));
    for (double w : {100.0, 1000.0, 5000.0})
        for (int m = 1; m <= 2; ++m)
            for (double t : {1e-6, 0.01, 0.5, 0.99, 1 - 1e-6})
                for (double x : tau(m, ShapeParam(w), t, EvalMode::StableLargeOmega)) EXPECT_TRUE(std::isfinite(x));
}

TEST(CornerWeights, ReproduceUpperPartition)
{
    const BasisVector up = phi(2, ShapeParam(4.0), 0.3, EvalMode::Auto);
    const BasisVector lo = bernstein(4, 0.3);
    const BasisVector lam = corner_weights(up, lo);
    // sum_j lo_j ((1 - l_j) e_j + l_j e_{j+1}) recovers up componentwise.
    BasisVector back(6);
    for (int j = 0; j < 5; ++j) {
        back[j] += lo[j] * (1.0 - lam[j]);
        back[j + 1] += lo[j] * lam[j];
    }
    EXPECT_LT(max_abs_diff(back, up), 1e-14);
}

TEST(Constants, ClosedFormsAndLimits)
{
    const ConstantsM1 k = constants_m1(ShapeParam(1.0));
    EXPECT_NEAR(k.c2, 0.322605, 2e-6);
    EXPECT_NEAR(k.c2, (std::sinh(1.0) - 1.0) / (std::cosh(1.0) - 1.0), 1e-15);
    for (double w : {1e-4, 0.3, 0.99, 1.01, 4.0, 60.0, 350.0}) {
        const auto o1 = oracle::consts1(w);
        const ConstantsM1 c = constants_m1(ShapeParam(w));
        EXPECT_NEAR(c.c1, oracle::to_d(o1.c1), 2e-15 * oracle::to_d(o1.c1));
        EXPECT_NEAR(c.c2, oracle::to_d(o1.c2), 2e-15 * oracle::to_d(o1.c2));
        EXPECT_NEAR(c.c3, oracle::to_d(o1.c3), 2e-15 * oracle::to_d(o1.c3));
        EXPECT_GT(c.c1, 0.0);
        EXPECT_LE(c.c1, 1.0);
        const auto o2 = oracle::consts2(w);
        const ConstantsM2 d = constants_m2(ShapeParam(w));
        EXPECT_NEAR(d.q2, oracle::to_d(o2.q2), 2e-15 * oracle::to_d(o2.q2));
        EXPECT_NEAR(d.q3, oracle::to_d(o2.q3), 2e-15 * oracle::to_d(o2.q3));
        EXPECT_NEAR(d.q4, oracle::to_d(o2.q4), 1e-13 * oracle::to_d(o2.q4));
        EXPECT_NEAR(d.q0, oracle::to_d(o2.q0), 2e-15);
        EXPECT_NEAR(d.g0, oracle::to_d(o2.g0), 1e-13 * std::fabs(oracle::to_d(o2.g0)));
        EXPECT_NEAR(d.g1, oracle::to_d(o2.g1), 1e-13 * std::fabs(oracle::to_d(o2.g1)));
        EXPECT_NEAR(d.g2, oracle::to_d(o2.g2), 1e-13 * std::fabs(oracle::to_d(o2.g2)));
        EXPECT_NE(d.g0, 0.0);
        EXPECT_NE(d.g1, 0.0);
        EXPECT_NE(d.g2, 0.0);
    }
    const ConstantsM1 s1 = constants_m1(ShapeParam(1e-4));
    EXPECT_NEAR(s1.c2, 1.0 / 3.0, 1e-7);
    EXPECT_NEAR(s1.c3, 1.0 / 3.0, 1e-7);
    const ConstantsM2 s2 = constants_m2(ShapeParam(1e-4));
    EXPECT_NEAR(s2.q0 / s2.q1, 2.0, 1e-6);
    EXPECT_NEAR(s2.q2, 0.2, 1e-6);
    EXPECT_NEAR(s2.q3, 0.2, 1e-6);
    EXPECT_NEAR(s2.q4, 1.0 / 15.0, 1e-6);
}

TEST(Constants, IntegralIdentities)
{
    for (double w : {0.2, 2.5, 25.0}) {
        const ConstantsM1 k = constants_m1(ShapeParam(w));
        const ConstantsM2 q = constants_m2(ShapeParam(w));
        auto v = [&](int m, int i) {
            return oracle::integrate([&](double x) { return varphi(m, ShapeParam(w), x)[i]; }, 0.0, 1.0);
        };
        EXPECT_NEAR(v(1, 0), k.c2, 1e-12);
        EXPECT_NEAR(k.c1 * v(1, 1), k.c3, 1e-12);
        EXPECT_NEAR(v(2, 0), q.q2, 1e-12);
        EXPECT_NEAR(v(2, 1), q.q3, 1e-12);
        EXPECT_NEAR(q.q1 * v(2, 2), q.q4, 1e-12);
    }
}

TEST(Auto, Dispatch)
{
    const Space a(1, ShapeParam(0.05)), b(1, ShapeParam(0.2)), c(2, ShapeParam(0.15)), d(2, ShapeParam(0.2));
    EXPECT_EQ(a.resolve(EvalMode::Auto), EvalMode::Taylor5);
    EXPECT_EQ(b.resolve(EvalMode::Auto), EvalMode::StableLargeOmega);
    EXPECT_EQ(c.resolve(EvalMode::Auto), EvalMode::Taylor5);
    EXPECT_EQ(d.resolve(EvalMode::Auto), EvalMode::StableLargeOmega);
    EXPECT_EQ(b.resolve(EvalMode::Auto, AutoThresholds{0.5, 0.5}), EvalMode::Taylor5);
    EXPECT_EQ(a.resolve(EvalMode::Naive), EvalMode::Naive);
    EXPECT_TRUE(Space(2, ShapeParam(1.0)).blended());
    EXPECT_FALSE(Space(2, ShapeParam(1.0), StableVariant::Verbatim).blended());
    EXPECT_FALSE(Space(2, ShapeParam(2.0)).blended());
}

TEST(EvalMode, Names)
{
    for (EvalMode m : {EvalMode::Naive, EvalMode::StableLargeOmega, EvalMode::Taylor5, EvalMode::Auto})
        EXPECT_EQ(eval_mode_from_string(to_string(m)), m);
    EXPECT_THROW(eval_mode_from_string("fast"), InputError);
}
