#include "eph/hermite.hpp"

#include <cmath>
#include <numbers>

#include "eph/error.hpp"

namespace eph {

const char* to_string(PlanarTag tag)
{
    switch (tag) {
    case PlanarTag::PP: return "++";
    case PlanarTag::PM: return "+-";
    case PlanarTag::MP: return "-+";
    case PlanarTag::MM: return "--";
    }
    return "?";
}

PlanarTag planar_tag_from_string(const std::string& s)
{
    if (s == "++") return PlanarTag::PP;
    if (s == "+-") return PlanarTag::PM;
    if (s == "-+") return PlanarTag::MP;
    if (s == "--") return PlanarTag::MM;
    throw InputError("planar tag must be one of ++, +-, -+, --; got '" + s + "'");
}

AngleChoice angles_for(PlanarTag tag)
{
    constexpr double pi = std::numbers::pi;
    switch (tag) {
    case PlanarTag::PP: return {0.0, 0.0, 0.0};
    case PlanarTag::PM: return {0.0, 0.0, pi};
    case PlanarTag::MP: return {pi, 0.0, 0.0};
    case PlanarTag::MM: return {pi, 0.0, pi};
    }
    return {};
}

HermiteSolution solve_spatial(const HermiteProblem& pb, const AngleChoice& ang)
{
    const ShapeParam omega(pb.omega);
    const ConstantsM2 k = constants_m2(omega);
    const double i0 = k.q2, i1 = 0.5 * k.q3, i2 = 0.5 * k.q4, i3 = k.i3;

    const Quaternion a0 = solve_sandwich(pb.di, ang.eta0);
    const Quaternion a2 = solve_sandwich(pb.df, ang.eta2);
    const Vec3 cross02 = 2.0 * sym_sandwich_i(a0, a2);  // A0 i A2* + A2 i A0*
    const double f0 = i1 * i1 - i0 * i3, f2 = i1 * i1 - i2 * i3;
    const Vec3 c = i3 * (pb.r1 - pb.r0) + f0 * (pb.di + pb.df) + f2 * cross02;

    const double scale = i3 * norm(pb.r1 - pb.r0) + std::fabs(f0) * (norm(pb.di) + norm(pb.df)) +
                         std::fabs(f2) * norm(cross02);
    if (norm(c) < 1e-14 * scale)
        throw DegenerateDirection("hermite: the vector c vanishes, A_1 has no defined direction");
    const Quaternion root = solve_sandwich(c, ang.eta1);  // sqrt|c| (i + w_c)/|i + w_c| exp(eta1 i)
    const Quaternion a1 = (-i1 / i3) * (a0 + a2) + (1.0 / i3) * root;

    Preimage pre{2, pb.omega, {a0, a1, a2}};
    EphCurve curve = curve_from_preimage(pre, pb.r0);
    return {std::move(pre), std::move(curve)};
}

HermiteSolution solve_planar(const HermiteProblem& pb, PlanarTag tag)
{
    if (pb.r0.z != 0.0 || pb.r1.z != 0.0 || pb.di.z != 0.0 || pb.df.z != 0.0)
        throw DomainError("planar hermite data must have z = 0");
    HermiteSolution s = solve_spatial(pb, angles_for(tag));
    std::vector<Vec3> pts = s.curve.control_points();
    for (Vec3& p : pts) p.z = 0.0;
    return {std::move(s.preimage), EphCurve(2, pb.omega, 2, std::move(pts))};
}

HermiteProblem cosh_problem(double omega)
{
    const double w = ShapeParam(omega).value();
    const double inv = 0.5 / w;
    return {{0.0, inv, 0.0}, {1.0, inv * std::cosh(2.0 * w), 0.0}, {1.0, 0.0, 0.0}, {1.0, std::sinh(2.0 * w), 0.0},
            w};
}

EphCurve reproduce_hyperbolic(double omega) { return solve_planar(cosh_problem(omega), PlanarTag::PP).curve; }

}  // namespace eph
