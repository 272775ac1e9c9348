#pragma once

#include <cmath>

namespace eph {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    bool operator==(const Vec3&) const = default;
};

inline Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
inline Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
inline Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
inline Vec3 operator*(double s, Vec3 a) { return a *= s; }
inline Vec3 operator*(Vec3 a, double s) { return a *= s; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline double norm_inf(const Vec3& a) { return std::fmax(std::fabs(a.x), std::fmax(std::fabs(a.y), std::fabs(a.z))); }
inline Vec3 cross(const Vec3& a, const Vec3& b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
// (1-h) a + h b
inline Vec3 lerp(const Vec3& a, const Vec3& b, double h)
{
    return {a.x + h * (b.x - a.x), a.y + h * (b.y - a.y), a.z + h * (b.z - a.z)};
}

// w + x i + y j + z k
struct Quaternion {
    double w = 0.0, x = 0.0, y = 0.0, z = 0.0;

    static Quaternion pure(const Vec3& v) { return {0.0, v.x, v.y, v.z}; }
    Vec3 vec() const { return {x, y, z}; }
    Quaternion conj() const { return {w, -x, -y, -z}; }
    double norm2() const { return w * w + x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }
    bool operator==(const Quaternion&) const = default;
};

inline Quaternion operator+(const Quaternion& p, const Quaternion& q) { return {p.w + q.w, p.x + q.x, p.y + q.y, p.z + q.z}; }
inline Quaternion operator-(const Quaternion& p, const Quaternion& q) { return {p.w - q.w, p.x - q.x, p.y - q.y, p.z - q.z}; }
inline Quaternion operator-(const Quaternion& q) { return {-q.w, -q.x, -q.y, -q.z}; }
inline Quaternion operator*(double s, const Quaternion& q) { return {s * q.w, s * q.x, s * q.y, s * q.z}; }
inline Quaternion operator*(const Quaternion& q, double s) { return s * q; }

// Hamilton product, ij = k, jk = i, ki = j.
inline Quaternion operator*(const Quaternion& p, const Quaternion& q)
{
    return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

inline Quaternion mul(const Quaternion& p, const Quaternion& q) { return p * q; }

// A i A*
Vec3 sandwich_i(const Quaternion& a);

// (A i B* + B i A*) / 2
Vec3 sym_sandwich_i(const Quaternion& a, const Quaternion& b);

// Real part of (A B* + B A*) / 2, i.e. the 4-vector dot product.
inline double sym_real(const Quaternion& a, const Quaternion& b)
{
    return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

// cos(eta) + sin(eta) i
inline Quaternion exp_i(double eta) { return {std::cos(eta), std::sin(eta), 0.0, 0.0}; }

// One solution of A i A* = d:  sqrt|d| (i + w)/|i + w| exp(eta i), w = d/|d|.
// Throws ZeroVector when d = 0 and DegenerateDirection when |i + w| < 1e-9.
Quaternion solve_sandwich(const Vec3& d, double eta);

}  // namespace eph
