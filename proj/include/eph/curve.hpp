#pragma once

#include <vector>

#include "eph/basis.hpp"
#include "eph/quaternion.hpp"

namespace eph {

// Bezier-like curve sum r_i Phi_i over EP_m. Planar curves keep z = 0.
class EphCurve {
public:
    EphCurve(int m, double omega, int dim, std::vector<Vec3> control_points);

    int m() const { return m_; }
    double omega() const { return omega_; }
    int dim() const { return dim_; }
    const std::vector<Vec3>& control_points() const { return pts_; }
    const Vec3& operator[](int i) const { return pts_[static_cast<std::size_t>(i)]; }
    int size() const { return static_cast<int>(pts_.size()); }

private:
    int m_;
    double omega_;
    int dim_;
    std::vector<Vec3> pts_;
};

struct Preimage {
    int m = 1;
    double omega = 1.0;
    std::vector<Quaternion> coeffs;  // A_0 .. A_m over psi_{.,m}

    void validate() const;
};

struct SpeedCoeffs {
    BasisVector sigma;  // over varphi_{.,m}
};

struct ArcLengthCoeffs {
    BasisVector s;  // over Phi_{.,m}, s_0 = 0
};

Vec3 eval_direct(const EphCurve& curve, double t, EvalMode mode = EvalMode::Auto,
                 const AutoThresholds& thr = {});
Vec3 eval_direct(const Space& space, const EphCurve& curve, double t, EvalMode mode = EvalMode::Auto,
                 const AutoThresholds& thr = {});

// sum (r_{i+1} - r_i) varphi_i / int varphi_i
Vec3 derivative(const EphCurve& curve, double t);
Vec3 derivative(const Space& space, const EphCurve& curve, double t);

Quaternion preimage_at(const Preimage& pre, double t);
Vec3 hodograph(const Preimage& pre, double t);

EphCurve curve_from_preimage(const Preimage& pre, const Vec3& r0);

SpeedCoeffs parametric_speed_coeffs(const Preimage& pre);
double parametric_speed(const Preimage& pre, double t);

ArcLengthCoeffs arc_length_coeffs(const Preimage& pre);
double arc_length(const Preimage& pre, double t);
double total_arc_length(const Preimage& pre);

// Grid proxy for "the components of A(t) have no common root": the minimum of
// sigma over 2001 equispaced points must exceed 1e-12 max sigma.
bool is_regular(const Preimage& pre);

}  // namespace eph
