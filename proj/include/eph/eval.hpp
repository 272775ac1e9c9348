#pragma once

#include <string>
#include <vector>

#include "eph/curve.hpp"

namespace eph {

enum class EvalMethod { Direct, DeCasteljau, WoznyChudy, NewProposal };

const char* to_string(EvalMethod method);
EvalMethod eval_method_from_string(const std::string& name);

// Measured stability breakpoints of each method, for callers that want each algorithm to
// switch at its own frontier. Evaluators default to one shared policy instead.
AutoThresholds method_breakpoints(EvalMethod method);

// Evaluates curves of one space (m, omega) with one algorithm. The basis mode is
// resolved once at construction.
class PointEvaluator {
public:
    PointEvaluator(int m, ShapeParam omega, EvalMethod method, EvalMode mode = EvalMode::Auto);
    PointEvaluator(int m, ShapeParam omega, EvalMethod method, EvalMode mode, const AutoThresholds& thr,
                   StableVariant variant = StableVariant::Blended);

    // r points at 2m+2 control points.
    Vec3 operator()(const Vec3* r, double t) const;
    Vec3 operator()(const EphCurve& curve, double t) const;

    // First corner-cutting pass of the new method: r1_0 .. r1_2m, t in (0,1).
    void first_pass(const Vec3* r, double t, Vec3* out) const;

    const Space& space() const { return sp_; }
    EvalMethod method() const { return method_; }
    EvalMode mode() const { return mode_; }

private:
    Vec3 direct(const Vec3* r, double t) const;
    Vec3 wozny_chudy(const Vec3* r, double t) const;
    Vec3 fresh(const Vec3* r, double t) const;
    Vec3 decasteljau(const Vec3* r, double t) const;
    BasisVector s1_basis(double t) const;
    BasisVector v_basis(double t) const;

    Space sp_;
    Space sp1_;  // the m = 1 space nested inside EP_2
    EvalMethod method_;
    EvalMode mode_;
    double e1_ = 0.0;
    // Coefficients of the V-space B-basis over {1, X+Y, Y-X, Y^2-X^2}.
    double va_ = 0, vb_ = 0, vc_ = 0, vd_ = 0, vc2_ = 0, vd2_ = 0;
};

Vec3 evaluate(const EphCurve& curve, double t, EvalMethod method, EvalMode mode = EvalMode::Auto);
Vec3 eval_decasteljau(const EphCurve& curve, double t, EvalMode mode = EvalMode::Auto);
Vec3 eval_wozny_chudy(const EphCurve& curve, double t, EvalMode mode = EvalMode::Auto);
Vec3 eval_new(const EphCurve& curve, double t, EvalMode mode = EvalMode::Auto);

// n equispaced samples over [0,1].
std::vector<Vec3> evaluate_grid(const EphCurve& curve, int n, EvalMethod method, EvalMode mode = EvalMode::Auto);

struct DynamicEvalReport {
    int k = 0;
    std::vector<Vec3> samples;
    double max_rel_error = 0.0;  // max |y_i - direct_i| / max |direct_i|, infinity norms
};

// Lifted linear recursion z_i = M z_{i-1} for m = 1, d = 3 curves.
DynamicEvalReport dynamic_eval_m1(const EphCurve& curve, int k);

}  // namespace eph
