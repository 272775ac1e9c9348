#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "eph/error.hpp"
#include "eph/eval.hpp"

using namespace eph;

namespace {

constexpr EvalMethod kAlgorithms[] = {EvalMethod::DeCasteljau, EvalMethod::WoznyChudy, EvalMethod::NewProposal};

EphCurve random_curve(std::mt19937_64& rng, int m, double omega, int dim)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Vec3> pts;
    for (int i = 0; i < 2 * m + 2; ++i) pts.push_back({u(rng), u(rng), dim == 3 ? u(rng) : 0.0});
    return EphCurve(m, omega, dim, pts);
}

// max_t |a(t) - direct(t)|_inf / max_t |direct(t)|_inf over an n-point grid
double grid_rel_error(const EphCurve& c, EvalMethod method, int n = 501)
{
    const PointEvaluator ref(c.m(), ShapeParam(c.omega()), EvalMethod::Direct);
    const PointEvaluator ev(c.m(), ShapeParam(c.omega()), method);
    double num = 0.0, den = 0.0;
    for (int k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) / (n - 1);
        const Vec3 d = ref(c, t);
        num = std::max(num, norm_inf(ev(c, t) - d));
        den = std::max(den, norm_inf(d));
    }
    return num / den;
}

}  // namespace

TEST(EvalMethod, Names)
{
    for (EvalMethod m : {EvalMethod::Direct, EvalMethod::DeCasteljau, EvalMethod::WoznyChudy, EvalMethod::NewProposal})
        EXPECT_EQ(eval_method_from_string(to_string(m)), m);
    EXPECT_THROW(eval_method_from_string("horner"), InputError);
}

TEST(Evaluators, EndpointsAndConstantPolygon)
{
    std::mt19937_64 rng(41);
    for (EvalMethod method : kAlgorithms)
        for (int m = 1; m <= 2; ++m)
            for (double w : {0.01, 0.5, 20.0, 1000.0}) {
                const EphCurve c = random_curve(rng, m, w, 3);
                EXPECT_EQ(evaluate(c, 0.0, method), c[0]);
                EXPECT_EQ(evaluate(c, 1.0, method), c[2 * m + 1]);
                const Vec3 p{0.25, -4.0, 3.0};
                const EphCurve k(m, w, 3, std::vector<Vec3>(static_cast<std::size_t>(2 * m + 2), p));
                for (double t : {1e-9, 0.2, 0.5, 0.77, 1 - 1e-9}) {
                    const Vec3 q = evaluate(k, t, method);
                    EXPECT_LT(norm(q - p), 1e-12 * norm(p)) << to_string(method) << " m=" << m << " w=" << w;
                }
            }
}

TEST(Evaluators, DomainChecks)
{
    std::mt19937_64 rng(42);
    const EphCurve c = random_curve(rng, 1, 1.0, 3);
    for (EvalMethod method : kAlgorithms) {
        EXPECT_THROW(evaluate(c, -0.1, method), DomainError);
        EXPECT_THROW(evaluate(c, 1.1, method), DomainError);
    }
    const PointEvaluator ev(2, ShapeParam(1.0), EvalMethod::NewProposal);
    EXPECT_THROW(ev(c, 0.5), DomainError);
}

TEST(Evaluators, SpecExamples)
{
    std::mt19937_64 rng(43);
    const EphCurve a = random_curve(rng, 1, 5.0, 3);
    const Vec3 da = eval_direct(a, 0.37);
    EXPECT_LT(norm_inf(eval_decasteljau(a, 0.37) - da), 1e-10 * norm_inf(da));
    const EphCurve b = random_curve(rng, 2, 20.0, 3);
    const Vec3 db = eval_direct(b, 0.8);
    EXPECT_LT(norm_inf(eval_wozny_chudy(b, 0.8) - db), 1e-10 * norm_inf(db));
    const EphCurve c = random_curve(rng, 2, 100.0, 3);
    EXPECT_LT(grid_rel_error(c, EvalMethod::NewProposal), 1e-10);
}

TEST(Evaluators, AgreeWithDirect)
{
    std::mt19937_64 rng(44);
    for (int d : {2, 3})
        for (int m = 1; m <= 2; ++m)
            for (double w : {0.05, 0.5, 1.0, 5.0, 20.0, 100.0, 1000.0})
                for (int n = 0; n < 5; ++n) {
                    const EphCurve c = random_curve(rng, m, w, d);
                    for (EvalMethod method : kAlgorithms)
                        EXPECT_LT(grid_rel_error(c, method, 201), 1e-9)
                            << to_string(method) << " d=" << d << " m=" << m << " w=" << w;
                }
}

TEST(Evaluators, ExplicitModes)
{
    std::mt19937_64 rng(45);
    for (int m = 1; m <= 2; ++m) {
        const EphCurve c = random_curve(rng, m, 3.0, 3);
        for (EvalMode mode : {EvalMode::Naive, EvalMode::StableLargeOmega})
            for (EvalMethod method : kAlgorithms)
                for (double t : {0.1, 0.5, 0.9}) {
                    const Vec3 d = eval_direct(c, t, mode);
                    EXPECT_LT(norm_inf(evaluate(c, t, method, mode) - d), 1e-12) << to_string(method);
                }
    }
}

TEST(Evaluators, AffineInvariance)
{
    std::mt19937_64 rng(46);
    // x -> L x + b with a shear-and-scale L.
    auto map = [](const Vec3& p) {
        return Vec3{2.0 * p.x - 0.5 * p.y + 1.0, 0.3 * p.x + 1.5 * p.y - p.z - 2.0, 0.7 * p.z + 0.25 * p.x + 0.5};
    };
    for (EvalMethod method : kAlgorithms)
        for (int m = 1; m <= 2; ++m)
            for (double w : {0.3, 7.0, 150.0}) {
                const EphCurve c = random_curve(rng, m, w, 3);
                std::vector<Vec3> moved;
                for (const Vec3& p : c.control_points()) moved.push_back(map(p));
                const EphCurve mc(m, w, 3, moved);
                for (int k = 0; k <= 50; ++k) {
                    const double t = k / 50.0;
                    EXPECT_LT(norm_inf(evaluate(mc, t, method) - map(evaluate(c, t, method))), 1e-11);
                }
            }
}

TEST(NewMethod, ExactEndpointShortCircuit)
{
    std::mt19937_64 rng(47);
    for (int m = 1; m <= 2; ++m) {
        const EphCurve c = random_curve(rng, m, 2.0, 3);
        const Vec3 a = eval_new(c, 0.0), b = eval_new(c, 1.0);
        EXPECT_EQ(a, c[0]);
        EXPECT_EQ(b, c[2 * m + 1]);
    }
}

TEST(NewMethod, BranchBoundary)
{
    std::mt19937_64 rng(48);
    for (int m = 1; m <= 2; ++m)
        for (double w : {0.05, 1.0, 30.0}) {
            const EphCurve c = random_curve(rng, m, w, 3);
            std::vector<Vec3> rev(c.control_points().rbegin(), c.control_points().rend());
            const EphCurve r(m, w, 3, rev);
            const Vec3 mid = eval_new(c, 0.5);
            EXPECT_LT(norm_inf(mid - eval_new(c, std::nextafter(0.5, 0.0))), 1e-12);
            EXPECT_LT(norm_inf(mid - eval_new(r, 0.5)), 1e-12);
            EXPECT_LT(norm_inf(eval_new(c, 0.3) - eval_new(r, 0.7)), 1e-12);
        }
}

// sum_i r1_i B_{i,2m}(t) reproduces the curve point.
TEST(NewMethod, FirstPassWeightIdentity)
{
    std::mt19937_64 rng(49);
    for (int m = 1; m <= 2; ++m)
        for (double w : {0.05, 0.5, 4.0, 40.0, 400.0}) {
            const EphCurve c = random_curve(rng, m, w, 3);
            const PointEvaluator ev(m, ShapeParam(w), EvalMethod::NewProposal);
            Vec3 r1[5];
            for (int k = 1; k < 100; ++k) {
                const double t = k / 100.0;
                ev.first_pass(c.control_points().data(), t, r1);
                const BasisVector b = bernstein(2 * m, t);
                Vec3 p;
                for (int i = 0; i <= 2 * m; ++i) p += b[i] * r1[i];
                EXPECT_LT(norm_inf(p - eval_direct(c, t)), 1e-11) << "m=" << m << " w=" << w << " t=" << t;
            }
        }
}

TEST(NewMethod, ExtremeParameters)
{
    std::mt19937_64 rng(50);
    for (int m = 1; m <= 2; ++m)
        for (double w : {1e-6, 5000.0})
            for (double t : {1e-12, 1e-6, 0.5, 1 - 1e-6}) {
                const EphCurve c = random_curve(rng, m, w, 3);
                const Vec3 p = eval_new(c, t);
                EXPECT_TRUE(std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z));
                EXPECT_LT(norm_inf(p - eval_direct(c, t)), 1e-9);
            }
}

TEST(Grid, EvaluateGrid)
{
    std::mt19937_64 rng(51);
    const EphCurve c = random_curve(rng, 2, 2.0, 2);
    const std::vector<Vec3> g = evaluate_grid(c, 11, EvalMethod::NewProposal);
    ASSERT_EQ(g.size(), 11u);
    EXPECT_EQ(g.front(), c[0]);
    EXPECT_EQ(g.back(), c[5]);
    EXPECT_LT(norm_inf(g[4] - eval_direct(c, 0.4)), 1e-12);
    EXPECT_THROW(evaluate_grid(c, 1, EvalMethod::Direct), DomainError);
}

TEST(Dynamic, SmallOmegaAccurate)
{
    std::mt19937_64 rng(52);
    for (int n = 0; n < 5; ++n) {
        const EphCurve c = random_curve(rng, 1, 0.5, 3);
        const DynamicEvalReport r = dynamic_eval_m1(c, 101);
        EXPECT_EQ(r.k, 101);
        EXPECT_EQ(r.samples.size(), 101u);
        EXPECT_LT(r.max_rel_error, 1e-8);
    }
}

TEST(Dynamic, LargeOmegaUnstable)
{
    std::mt19937_64 rng(53);
    const EphCurve c = random_curve(rng, 1, 50.0, 3);
    EXPECT_GT(dynamic_eval_m1(c, 101).max_rel_error, 1.0);
}

TEST(Dynamic, TwoSamplesAreEndpoints)
{
    std::mt19937_64 rng(54);
    const EphCurve c = random_curve(rng, 1, 3.0, 3);
    const DynamicEvalReport r = dynamic_eval_m1(c, 2);
    ASSERT_EQ(r.samples.size(), 2u);
    EXPECT_LT(norm_inf(r.samples[0] - c[0]), 1e-12);
    EXPECT_LT(norm_inf(r.samples[1] - c[3]), 1e-12);
}

TEST(Dynamic, Preconditions)
{
    std::mt19937_64 rng(55);
    EXPECT_THROW(dynamic_eval_m1(random_curve(rng, 2, 1.0, 3), 10), DomainError);
    EXPECT_THROW(dynamic_eval_m1(random_curve(rng, 1, 1.0, 2), 10), DomainError);
    EXPECT_THROW(dynamic_eval_m1(random_curve(rng, 1, 1.0, 3), 1), DomainError);
    const EphCurve flat(1, 1.0, 3, {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {0, 1, 0}});
    EXPECT_THROW(dynamic_eval_m1(flat, 10), SingularControlBlock);
}

TEST(Thresholds, SharedDefaultAndTable)
{
    for (EvalMethod method : {EvalMethod::Direct, EvalMethod::DeCasteljau, EvalMethod::WoznyChudy, EvalMethod::NewProposal}) {
        const PointEvaluator a(1, ShapeParam(0.09), method), b(2, ShapeParam(0.19), method);
        EXPECT_EQ(a.mode(), EvalMode::Taylor5);
        EXPECT_EQ(b.mode(), EvalMode::StableLargeOmega);
    }
    EXPECT_EQ(method_breakpoints(EvalMethod::DeCasteljau).m2, 1.116);
    EXPECT_EQ(method_breakpoints(EvalMethod::NewProposal).m1, 0.096);
    const PointEvaluator c(2, ShapeParam(1.0), EvalMethod::DeCasteljau, EvalMode::Auto,
                           method_breakpoints(EvalMethod::DeCasteljau));
    EXPECT_EQ(c.mode(), EvalMode::Taylor5);
}
