#include "eph/curve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eph/error.hpp"

namespace eph {

namespace {

bool finite(const Vec3& p) { return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z); }

BasisVector speed_coeffs(const Space& sp, const std::vector<Quaternion>& a)
{
    if (sp.m() == 1) {
        BasisVector s(3);
        s[0] = a[0].norm2();
        s[1] = sp.k1().c1 * sym_real(a[1], a[0]);
        s[2] = a[1].norm2();
        return s;
    }
    const ConstantsM2& k = sp.k2();
    BasisVector s(5);
    s[0] = a[0].norm2();
    s[1] = sym_real(a[1], a[0]);
    s[2] = k.q0 * a[1].norm2() + k.q1 * sym_real(a[2], a[0]);
    s[3] = sym_real(a[1], a[2]);
    s[4] = a[2].norm2();
    return s;
}

}  // namespace

EphCurve::EphCurve(int m, double omega, int dim, std::vector<Vec3> control_points)
    : m_(m), omega_(ShapeParam(omega).value()), dim_(dim), pts_(std::move(control_points))
{
    check_m(m);
    if (dim != 2 && dim != 3)
        throw DomainError("curve dimension must be 2 or 3, got " + std::to_string(dim));
    if (static_cast<int>(pts_.size()) != 2 * m + 2)
        throw DomainError("curve with m=" + std::to_string(m) + " needs " + std::to_string(2 * m + 2) +
                          " control points, got " + std::to_string(pts_.size()));
    for (const Vec3& p : pts_) {
        if (!finite(p)) throw DomainError("control points must be finite");
        if (dim == 2 && p.z != 0.0) throw DomainError("planar curve control points must have z = 0");
    }
}

void Preimage::validate() const
{
    check_m(m);
    ShapeParam{omega};
    if (static_cast<int>(coeffs.size()) != m + 1)
        throw DomainError("preimage with m=" + std::to_string(m) + " needs " + std::to_string(m + 1) +
                          " coefficients, got " + std::to_string(coeffs.size()));
    for (const Quaternion& q : coeffs)
        if (!std::isfinite(q.w) || !std::isfinite(q.x) || !std::isfinite(q.y) || !std::isfinite(q.z))
            throw DomainError("preimage coefficients must be finite");
}

Vec3 eval_direct(const Space& space, const EphCurve& curve, double t, EvalMode mode, const AutoThresholds& thr)
{
    check_unit(t, "eval_direct");
    const BasisVector b = space.phi(t, mode, thr);
    Vec3 p;
    for (int i = 0; i < b.size(); ++i) p += b[i] * curve[i];
    return p;
}

Vec3 eval_direct(const EphCurve& curve, double t, EvalMode mode, const AutoThresholds& thr)
{
    return eval_direct(Space(curve.m(), ShapeParam(curve.omega())), curve, t, mode, thr);
}

Vec3 derivative(const Space& space, const EphCurve& curve, double t)
{
    check_unit(t, "derivative");
    const BasisVector v = space.varphi(t);
    const BasisVector& in = space.varphi_integrals();
    Vec3 d;
    for (int i = 0; i < v.size(); ++i) d += (v[i] / in[i]) * (curve[i + 1] - curve[i]);
    return d;
}

Vec3 derivative(const EphCurve& curve, double t)
{
    return derivative(Space(curve.m(), ShapeParam(curve.omega())), curve, t);
}

Quaternion preimage_at(const Preimage& pre, double t)
{
    pre.validate();
    const BasisVector p = psi(pre.m, ShapeParam(pre.omega), t);
    Quaternion a;
    for (int j = 0; j < p.size(); ++j) a = a + p[j] * pre.coeffs[static_cast<std::size_t>(j)];
    return a;
}

Vec3 hodograph(const Preimage& pre, double t) { return sandwich_i(preimage_at(pre, t)); }

EphCurve curve_from_preimage(const Preimage& pre, const Vec3& r0)
{
    pre.validate();
    const Space sp(pre.m, ShapeParam(pre.omega));
    const auto& a = pre.coeffs;
    std::vector<Vec3> r(static_cast<std::size_t>(2 * pre.m + 2));
    r[0] = r0;
    if (pre.m == 1) {
        const ConstantsM1& k = sp.k1();
        r[1] = r[0] + k.c2 * sandwich_i(a[0]);
        r[2] = r[1] + k.c3 * sym_sandwich_i(a[0], a[1]);
        r[3] = r[2] + k.c2 * sandwich_i(a[1]);
    } else {
        const ConstantsM2& k = sp.k2();
        r[1] = r[0] + k.q2 * sandwich_i(a[0]);
        r[2] = r[1] + k.q3 * sym_sandwich_i(a[0], a[1]);
        r[3] = r[2] + k.q4 * sym_sandwich_i(a[0], a[2]) + k.i3 * sandwich_i(a[1]);
        r[4] = r[3] + k.q3 * sym_sandwich_i(a[1], a[2]);
        r[5] = r[4] + k.q2 * sandwich_i(a[2]);
    }
    return EphCurve(pre.m, pre.omega, 3, std::move(r));
}

SpeedCoeffs parametric_speed_coeffs(const Preimage& pre)
{
    pre.validate();
    return {speed_coeffs(Space(pre.m, ShapeParam(pre.omega)), pre.coeffs)};
}

double parametric_speed(const Preimage& pre, double t)
{
    pre.validate();
    const Space sp(pre.m, ShapeParam(pre.omega));
    const BasisVector s = speed_coeffs(sp, pre.coeffs);
    const BasisVector v = sp.varphi(t);
    double acc = 0.0;
    for (int i = 0; i < v.size(); ++i) acc += s[i] * v[i];
    return acc;
}

ArcLengthCoeffs arc_length_coeffs(const Preimage& pre)
{
    pre.validate();
    const Space sp(pre.m, ShapeParam(pre.omega));
    const BasisVector sig = speed_coeffs(sp, pre.coeffs);
    const BasisVector& in = sp.varphi_integrals();
    BasisVector s(sp.n_phi());
    for (int i = 0; i < sig.size(); ++i) s[i + 1] = s[i] + sig[i] * in[i];
    return {s};
}

double arc_length(const Preimage& pre, double t)
{
    const ArcLengthCoeffs c = arc_length_coeffs(pre);
    const BasisVector b = phi(pre.m, ShapeParam(pre.omega), t, EvalMode::Auto);
    double acc = 0.0;
    for (int i = 0; i < b.size(); ++i) acc += c.s[i] * b[i];
    return acc;
}

double total_arc_length(const Preimage& pre)
{
    const ArcLengthCoeffs c = arc_length_coeffs(pre);
    return c.s[c.s.size() - 1];
}

bool is_regular(const Preimage& pre)
{
    pre.validate();
    const Space sp(pre.m, ShapeParam(pre.omega));
    const BasisVector s = speed_coeffs(sp, pre.coeffs);
    constexpr int kGrid = 2001;
    double lo = INFINITY, hi = 0.0;
    for (int i = 0; i < kGrid; ++i) {
        const BasisVector v = sp.varphi(static_cast<double>(i) / (kGrid - 1));
        double acc = 0.0;
        for (int j = 0; j < v.size(); ++j) acc += s[j] * v[j];
        lo = std::min(lo, acc);
        hi = std::max(hi, acc);
    }
    return hi > 0.0 && lo > 1e-12 * hi;
}

}  // namespace eph
