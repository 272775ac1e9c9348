#include "eph/quaternion.hpp"

#include "eph/error.hpp"

namespace eph {

Vec3 sandwich_i(const Quaternion& a)
{
    return {a.w * a.w + a.x * a.x - a.y * a.y - a.z * a.z,
            2.0 * (a.x * a.y + a.w * a.z),
            2.0 * (a.x * a.z - a.w * a.y)};
}

// Polarization of sandwich_i; the scalar part vanishes identically.
Vec3 sym_sandwich_i(const Quaternion& a, const Quaternion& b)
{
    return {a.w * b.w + a.x * b.x - a.y * b.y - a.z * b.z,
            a.x * b.y + b.x * a.y + a.w * b.z + b.w * a.z,
            a.x * b.z + b.x * a.z - a.w * b.y - b.w * a.y};
}

Quaternion solve_sandwich(const Vec3& d, double eta)
{
    const double len = norm(d);
    if (!(len > 0.0))
        throw ZeroVector("solve_sandwich: zero vector has no quaternion root");
    const Vec3 u = (1.0 / len) * d;
    const Quaternion iw{0.0, 1.0 + u.x, u.y, u.z};
    const double n = iw.norm();
    if (n < 1e-9)
        throw DegenerateDirection("solve_sandwich: vector is antiparallel to (1,0,0)");
    return (std::sqrt(len) / n) * iw * exp_i(eta);
}

}  // namespace eph
