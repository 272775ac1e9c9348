#pragma once

#include <array>
#include <cstddef>

namespace eph {

enum class EvalMode { Naive, StableLargeOmega, Taylor5, Auto };

// What StableLargeOmega evaluates below kBlendBelow. Blended substitutes the
// closed forms there, which are the more accurate pair for moderate omega (the
// stable forms lose up to eps / omega^10 to cancellation); Verbatim always uses
// the stable forms.
enum class StableVariant { Blended, Verbatim };

const char* to_string(EvalMode mode);
EvalMode eval_mode_from_string(const char* name);

// Below the threshold Auto evaluates the Taylor basis, above it the stable one.
struct AutoThresholds {
    double m1 = 0.096;
    double m2 = 0.184;
    double for_m(int m) const { return m == 1 ? m1 : m2; }
};

class ShapeParam {
public:
    explicit ShapeParam(double omega);
    double value() const { return omega_; }
    operator double() const { return omega_; }

private:
    double omega_;
};

// Fixed-capacity dense vector; every basis of interest has at most 6 functions.
struct BasisVector {
    std::array<double, 6> v{};
    int n = 0;

    BasisVector() = default;
    explicit BasisVector(int size) : n(size) {}
    double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
    int size() const { return n; }
    const double* begin() const { return v.data(); }
    const double* end() const { return v.data() + n; }
    double sum() const;
};

struct ConstantsM1 {
    double c1, c2, c3;
    double c3_over_c1;
};

struct ConstantsM2 {
    double q0, q1, q2, q3, q4;
    double g0, g1, g2;  // closed-form scalings; overflow beyond omega ~ 350 like the forms using them
    double q4_over_q1;
    double i3;  // q4 q0 / q1
};

ConstantsM1 constants_m1(ShapeParam omega);
ConstantsM2 constants_m2(ShapeParam omega);

namespace detail {
// Coefficients of the stable numerators grouped by monomials in (X, Y, t).
template <class F>
struct StableCoeffs {
    F w = 0, iw = 0;
    F e[8] = {};  // powers of exp(-omega)
    F s1_inv3 = 0, s1_y = 0, s1_x = 0, s1_c = 0, s1_t = 0, s1_inv2 = 0;
    F s2_inv5 = 0;
    F s2_4x3 = 0, s2_4x2 = 0, s2_4x = 0, s2_4tx = 0, s2_4y = 0, s2_4c = 0, s2_inv4 = 0;
    F s2_3y = 0, s2_3y2 = 0, s2_3x = 0, s2_3x2 = 0, s2_3c = 0, s2_3t = 0, s2_inv3 = 0;
    // Corner-cutting weights, same grouping.
    F ta = 0, tb = 0, tc = 0, td = 0, tf = 0, tg = 0, th = 0, tk = 0, tl = 0;
    F t_inv04 = 0, t_inv13 = 0, t_inv2 = 0;

    void init(int m, double omega);
};
}  // namespace detail

inline constexpr double kBlendBelow = 2.0;

// Per-(m, omega) data reused by every evaluation at that shape parameter.
class Space {
public:
    Space(int m, ShapeParam omega, StableVariant variant = StableVariant::Blended);

    int m() const { return m_; }
    double omega() const { return w_; }
    StableVariant variant() const { return variant_; }
    bool blended() const { return blend_; }
    int n_phi() const { return 2 * m_ + 2; }
    const ConstantsM1& k1() const { return k1_; }
    const ConstantsM2& k2() const { return k2_; }

    // Integrals over [0,1] of varphi_0 .. varphi_2m.
    const BasisVector& varphi_integrals() const { return vint_; }

    EvalMode resolve(EvalMode mode, const AutoThresholds& thr = {}) const;

    BasisVector psi(double t) const;
    BasisVector varphi(double t) const;
    BasisVector phi(double t, EvalMode mode, const AutoThresholds& thr = {}) const;
    BasisVector tau(double t, EvalMode mode, const AutoThresholds& thr = {}) const;

    // The unchecked kernels below assume t in range and a resolved mode.
    BasisVector phi_naive(double t) const;
    BasisVector phi_stable(double t) const;
    BasisVector phi_taylor(double t) const;
    BasisVector tau_stable(double t) const;
    BasisVector tau_from_phi(const BasisVector& p, double t) const;

private:
    BasisVector varphi1(double t) const;

    int m_;
    double w_;
    StableVariant variant_;
    bool blend_;
    double e1_;
    ConstantsM1 k1_{};
    ConstantsM2 k2_{};
    BasisVector vint_;
    std::array<double, 4> nv_{};  // t-independent factors of the closed forms
    detail::StableCoeffs<double> cd_;
};

// Free-function forms of the Space methods; each builds a Space on the fly.
BasisVector psi(int m, ShapeParam omega, double t);
BasisVector varphi(int m, ShapeParam omega, double t);
BasisVector phi(int m, ShapeParam omega, double t, EvalMode mode, const AutoThresholds& thr = {});
BasisVector taylor_phi(int m, ShapeParam omega, double t);
BasisVector tau(int m, ShapeParam omega, double t, EvalMode mode, const AutoThresholds& thr = {});

// Weights lambda_j with sum_i up_i P_i = sum_j lo_j ((1 - lambda_j) P_j + lambda_j P_{j+1})
// for partitions of unity up (n+1 entries) and lo (n entries). Each weight uses
// the head-sum or tail-sum form, whichever has the smaller operands; lo_j = 0
// gives lambda_j = 0.
BasisVector corner_weights(const BasisVector& up, const BasisVector& lo);

// Bernstein polynomials of the given degree at t.
BasisVector bernstein(int degree, double t);

void check_m(int m);
void check_unit(double t, const char* what);

}  // namespace eph
