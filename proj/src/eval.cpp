#include "eph/eval.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "eph/error.hpp"

namespace eph {

namespace {

// k / (2m + 1 - k)
constexpr double kRatio4[5] = {0.0, 0.25, 2.0 / 3.0, 1.5, 4.0};
constexpr double kRatio2[3] = {0.0, 0.5, 2.0};

}  // namespace

const char* to_string(EvalMethod method)
{
    switch (method) {
    case EvalMethod::Direct: return "direct";
    case EvalMethod::DeCasteljau: return "decasteljau";
    case EvalMethod::WoznyChudy: return "woznychudy";
    case EvalMethod::NewProposal: return "new";
    }
    return "?";
}

EvalMethod eval_method_from_string(const std::string& name)
{
    if (name == "direct") return EvalMethod::Direct;
    if (name == "decasteljau") return EvalMethod::DeCasteljau;
    if (name == "woznychudy") return EvalMethod::WoznyChudy;
    if (name == "new") return EvalMethod::NewProposal;
    throw InputError("unknown method '" + name + "' (direct, decasteljau, woznychudy, new)");
}

AutoThresholds method_breakpoints(EvalMethod method)
{
    switch (method) {
    case EvalMethod::NewProposal: return {0.096, 0.184};
    case EvalMethod::DeCasteljau: return {0.276, 1.116};
    case EvalMethod::WoznyChudy: return {0.22, 0.38};
    case EvalMethod::Direct: return {0.212, 0.368};
    }
    return {};
}

PointEvaluator::PointEvaluator(int m, ShapeParam omega, EvalMethod method, EvalMode mode)
    : PointEvaluator(m, omega, method, mode, AutoThresholds{})
{
}

PointEvaluator::PointEvaluator(int m, ShapeParam omega, EvalMethod method, EvalMode mode, const AutoThresholds& thr,
                               StableVariant variant)
    : sp_(m, omega, variant), sp1_(1, omega, variant), method_(method), mode_(sp_.resolve(mode, thr))
{
    const double w = omega.value();
    e1_ = std::exp(-w);
    if (method_ == EvalMethod::DeCasteljau && m == 2) {
        // b3 = a + b f1 + c f2 + d f3 vanishes to third order at 0 and b3(1) = 1;
        // f1 = X+Y, f2 = Y-X, f3 = Y^2-X^2 with X = exp(-wt), Y = exp(w(t-1)).
        const double E = e1_, E2 = E * E;
        Eigen::Matrix4d A;
        A << 1, 1 + E, E - 1, E2 - 1,
             0, E - 1, E + 1, 2 * E2 + 2,
             0, 1 + E, E - 1, 4 * E2 - 4,
             1, 1 + E, 1 - E, 1 - E2;
        const Eigen::Vector4d rhs(0, 0, 0, 1);
        const Eigen::Vector4d x = A.fullPivLu().solve(rhs);
        va_ = x[0];
        vb_ = x[1];
        vc_ = x[2];
        vd_ = x[3];
        // b2 = (1/2 - a) - b f1 + c2 f2 + d2 f3, double zero at 0, simple zero at 1.
        vd2_ = -vb_ / -std::expm1(-w);
        vc2_ = -vd2_ * (E + 1.0);
    }
}

Vec3 PointEvaluator::operator()(const EphCurve& curve, double t) const
{
    if (curve.m() != sp_.m() || curve.omega() != sp_.omega())
        throw DomainError("curve space does not match the evaluator");
    return (*this)(curve.control_points().data(), t);
}

Vec3 PointEvaluator::operator()(const Vec3* r, double t) const
{
    check_unit(t, to_string(method_));
    switch (method_) {
    case EvalMethod::Direct: return direct(r, t);
    case EvalMethod::WoznyChudy: return wozny_chudy(r, t);
    case EvalMethod::NewProposal: return fresh(r, t);
    case EvalMethod::DeCasteljau: return decasteljau(r, t);
    }
    return {};
}

Vec3 PointEvaluator::direct(const Vec3* r, double t) const
{
    const BasisVector b = sp_.phi(t, mode_);
    Vec3 p;
    for (int i = 0; i < b.size(); ++i) p += b[i] * r[i];
    return p;
}

// q_k = (1 - h_k) q_{k-1} + h_k r_k with h_k = Phi_k / sum_{j<=k} Phi_j, walking
// in from the nearer end.
Vec3 PointEvaluator::wozny_chudy(const Vec3* r, double t) const
{
    const int n = sp_.n_phi() - 1;
    if (t == 0.0) return r[0];
    if (t == 1.0) return r[n];
    const BasisVector b = sp_.phi(t, mode_);
    if (t < 0.5) {
        Vec3 q = r[0];
        double acc = b[0];
        for (int k = 1; k <= n; ++k) {
            acc += b[k];
            q = lerp(q, r[k], acc > 0.0 ? b[k] / acc : 0.0);
        }
        return q;
    }
    Vec3 q = r[n];
    double acc = b[n];
    for (int k = n - 1; k >= 0; --k) {
        acc += b[k];
        q = lerp(q, r[k], acc > 0.0 ? b[k] / acc : 0.0);
    }
    return q;
}

void PointEvaluator::first_pass(const Vec3* r, double t, Vec3* out) const
{
    const BasisVector tau = mode_ == EvalMode::StableLargeOmega ? sp_.tau_stable(t) : sp_.tau(t, mode_);
    for (int j = 0; j < tau.size(); ++j) out[j] = lerp(r[j + 1], r[j], tau[j]);
}

// The first-pass points r1_j are formed as the recursion reaches them.
// h_k = (1 + k D / ((2m+1-k) h_{k-1}))^{-1} is carried as g_k = 1/h_k so the
// recursion needs no division.
Vec3 PointEvaluator::fresh(const Vec3* r, double t) const
{
    const int n = sp_.n_phi() - 1;
    if (t == 0.0) return r[0];
    if (t == 1.0) return r[n];
    const BasisVector tau = mode_ == EvalMode::StableLargeOmega ? sp_.tau_stable(t) : sp_.tau(t, mode_);
    const int deg = n - 1;  // 2m
    const double* ratio = deg == 2 ? kRatio2 : kRatio4;
    double g = 1.0;
    Vec3 q;
    if (t >= 0.5) {
        const double D = (1.0 - t) / t;
        q = lerp(r[1], r[0], tau[0]);
        for (int k = 1; k <= deg; ++k) {
            g = 1.0 + ratio[k] * D * g;
            q = lerp(q, lerp(r[k + 1], r[k], tau[k]), 1.0 / g);
        }
    } else {
        const double D = t / (1.0 - t);
        q = lerp(r[deg + 1], r[deg], tau[deg]);
        for (int k = 1; k <= deg; ++k) {
            g = 1.0 + ratio[k] * D * g;
            const int j = deg - k;
            q = lerp(q, lerp(r[j + 1], r[j], tau[j]), 1.0 / g);
        }
    }
    return q;
}

// {u0, u1} spanning {1, sinh(w(t - 1/2))}.
BasisVector PointEvaluator::s1_basis(double t) const
{
    const double w = sp_.omega();
    const double inv = 0.5 / -std::expm1(-w);
    BasisVector u(2);
    u[0] = -std::expm1(-w * (1.0 - t)) * (1.0 + std::exp(-w * t)) * inv;
    u[1] = -std::expm1(-w * t) * (1.0 + std::exp(-w * (1.0 - t))) * inv;
    return u;
}

BasisVector PointEvaluator::v_basis(double t) const
{
    const double w = sp_.omega();
    const double x = std::exp(-w * t), y = std::exp(-w * (1.0 - t));
    const double f1 = x + y, f2 = y - x, f3 = (y - x) * (y + x);
    const double sym = va_ + vb_ * f1, odd = vc_ * f2 + vd_ * f3;
    const double sym2 = 0.5 - va_ - vb_ * f1, odd2 = vc2_ * f2 + vd2_ * f3;
    BasisVector b(4);
    b[0] = sym - odd;
    b[1] = sym2 - odd2;
    b[2] = sym2 + odd2;
    b[3] = sym + odd;
    return b;
}

// Nested corner cutting EP_m -> DEP_m [-> V -> DEP_1] -> S_1 -> {1}. Each level's
// weights make the lower basis reproduce the upper combination at t.
Vec3 PointEvaluator::decasteljau(const Vec3* r, double t) const
{
    const int n = sp_.n_phi();
    if (t == 0.0) return r[0];
    if (t == 1.0) return r[n - 1];
    BasisVector levels[6];
    int nl = 0;
    levels[nl++] = sp_.phi(t, mode_);
    if (mode_ == EvalMode::Taylor5) {
        for (int deg = n - 2; deg >= 0; --deg) levels[nl++] = bernstein(deg, t);
    } else {
        levels[nl++] = sp_.varphi(t);
        if (sp_.m() == 2) {
            levels[nl++] = v_basis(t);
            levels[nl++] = sp1_.varphi(t);
        }
        levels[nl++] = s1_basis(t);
        BasisVector one(1);
        one[0] = 1.0;
        levels[nl++] = one;
    }
    Vec3 pts[6];
    std::copy(r, r + n, pts);
    for (int p = 0; p + 1 < nl; ++p) {
        const BasisVector lambda = corner_weights(levels[p], levels[p + 1]);
        for (int j = 0; j < lambda.size(); ++j) pts[j] = lerp(pts[j], pts[j + 1], lambda[j]);
    }
    return pts[0];
}

Vec3 evaluate(const EphCurve& curve, double t, EvalMethod method, EvalMode mode)
{
    return PointEvaluator(curve.m(), ShapeParam(curve.omega()), method, mode)(curve, t);
}

Vec3 eval_decasteljau(const EphCurve& curve, double t, EvalMode mode)
{
    return evaluate(curve, t, EvalMethod::DeCasteljau, mode);
}

Vec3 eval_wozny_chudy(const EphCurve& curve, double t, EvalMode mode)
{
    return evaluate(curve, t, EvalMethod::WoznyChudy, mode);
}

Vec3 eval_new(const EphCurve& curve, double t, EvalMode mode)
{
    return evaluate(curve, t, EvalMethod::NewProposal, mode);
}

std::vector<Vec3> evaluate_grid(const EphCurve& curve, int n, EvalMethod method, EvalMode mode)
{
    if (n < 2) throw DomainError("grid needs at least 2 points");
    const PointEvaluator ev(curve.m(), ShapeParam(curve.omega()), method, mode);
    std::vector<Vec3> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = ev(curve, static_cast<double>(i) / (n - 1));
    return out;
}

DynamicEvalReport dynamic_eval_m1(const EphCurve& curve, int k)
{
    if (curve.m() != 1) throw DomainError("dynamic evaluation is implemented for m = 1 only");
    if (curve.dim() != 3) throw DomainError("dynamic evaluation needs a spatial (d = 3) curve");
    if (k < 2) throw DomainError("dynamic evaluation needs k >= 2 samples");
    const double w = curve.omega();
    const double h = 1.0 / (k - 1);

    Eigen::Matrix4d R = Eigen::Matrix4d::Zero();
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 3; ++i) R(i, j) = curve[j][i];
    R(3, 0) = 1.0;
    const Eigen::Matrix3d R2 = R.block<3, 3>(0, 1);
    const double scale = norm(curve[1]) * norm(curve[2]) * norm(curve[3]);
    if (!(std::fabs(R2.determinant()) > 1e-14 * scale))
        throw SingularControlBlock("dynamic evaluation: det[r1 r2 r3] = 0");

    const double c2 = constants_m1(ShapeParam(w)).c2;
    const double ew = std::exp(w), emw = std::exp(-w);
    Eigen::Matrix4d B;
    B << 1, 1, 1, 1,
         0, c2, 1 - c2, 1,
         1, 1 + w * c2, ew * (1 - w * c2), ew,
         1, 1 - w * c2, emw * (1 + w * c2), emw;
    Eigen::Matrix4d Ch = Eigen::Matrix4d::Zero();
    Ch(0, 0) = 1;
    Ch(1, 0) = h;
    Ch(1, 1) = 1;
    Ch(2, 2) = std::exp(w * h);
    Ch(3, 3) = std::exp(-w * h);
    const Eigen::Matrix4d C = B.partialPivLu().solve(Ch * B);
    const Eigen::Matrix4d M = R * C * R.inverse();

    DynamicEvalReport rep;
    rep.k = k;
    rep.samples.reserve(static_cast<std::size_t>(k));
    Eigen::Vector4d z = R.col(0);
    const PointEvaluator direct(1, ShapeParam(w), EvalMethod::Direct);
    double err = 0.0, ref = 0.0;
    for (int i = 0; i < k; ++i) {
        if (i > 0) z = M * z;
        const Vec3 y{z[0], z[1], z[2]};
        rep.samples.push_back(y);
        const Vec3 d = direct(curve, std::min(1.0, i * h));
        err = std::max(err, norm_inf(y - d));
        ref = std::max(ref, norm_inf(d));
    }
    rep.max_rel_error = ref > 0.0 ? err / ref : err;
    if (std::isnan(rep.max_rel_error)) rep.max_rel_error = INFINITY;
    return rep;
}

}  // namespace eph
