#include "eph/basis.hpp"

#include <cmath>
#include <cstring>
#include <string>

#include "eph/error.hpp"

namespace eph {

namespace {

// Even power series in omega, coefficients of omega^0, omega^2, ...
constexpr int kSeriesTerms = 13;
constexpr double kSeriesBelow = 1.0;

constexpr double kC2[kSeriesTerms] = {
    0.33333333333333331, -0.011111111111111112, 0.00039682539682539683, -1.3227513227513228e-05,
    4.1753513975736198e-07, -1.2682056332849983e-08, 3.7471102285917102e-10, -1.0846976948232265e-11,
    3.0909823402600239e-13, -8.6994747942322467e-15, 2.4239612444785008e-16, -6.6981430491900115e-18,
    1.838047660607323e-19};
constexpr double kC3OverC1[kSeriesTerms] = {
    0.33333333333333331, 0.022222222222222223, -0.00079365079365079365, 2.6455026455026456e-05,
    -8.3507027951472395e-07, 2.5364112665699966e-08, -7.4942204571834204e-10, 2.1693953896464529e-11,
    -6.1819646805200478e-13, 1.7398949588464493e-14, -4.8479224889570017e-16, 1.3396286098380023e-17,
    -3.6760953212146461e-19};
constexpr double kC3[kSeriesTerms] = {
    0.33333333333333331, -0.019444444444444445, 0.00076884920634920633, -2.6248346560846562e-05,
    8.3343928287504678e-07, -2.5351727845062418e-08, 7.4933056353502681e-10, -2.1693291849531654e-11,
    6.1819175158725217e-13, -1.7398916402601786e-14, 4.8479201772874192e-16, -1.3396284501418274e-17,
    3.6760952116584684e-19};
constexpr double kQ2[kSeriesTerms] = {
    0.20000000000000001, -0.0095238095238095247, 0.00047619047619047619, -2.1645021645021645e-05,
    9.062806681854301e-07, -3.5568487949440333e-08, 1.3262880909939733e-09, -4.746084830165246e-11,
    1.6421593068267155e-12, -5.5252923531164643e-14, 1.8158282536689981e-15, -5.8490501342814698e-17,
    1.8518057684888665e-18};
constexpr double kQ3[kSeriesTerms] = {
    0.20000000000000001, 0.0047619047619047623, -0.00071428571428571429, 4.6897546897546898e-05,
    -2.3725172534696344e-06, 1.0422778279921137e-07, -4.1810192953983801e-09, 1.5730246236191305e-10,
    -5.6413425252288549e-12, 1.9491326974196183e-13, -6.5361246413324414e-15, 2.1386757622368876e-16,
    -6.8558087757732684e-18};
constexpr double kQ4[kSeriesTerms] = {
    0.066666666666666666, -0.0079365079365079361, 0.00055555555555555556, -3.0062530062530064e-05,
    1.3950261966134983e-06, -5.8454919566030674e-08, 2.2778651591287758e-09, -8.4074719655072649e-11,
    2.9752203796274286e-12, -1.0180637226809704e-13, 3.3892603828901459e-15, -1.1028285963643938e-16,
    3.5198067709170002e-18};
constexpr double kQ4OverQ1[kSeriesTerms] = {
    0.20000000000000001, 0.0095238095238095247, 0.00047619047619047619, -5.0505050505050505e-05,
    2.9324731705684088e-06, -1.3731858969954207e-07, 5.7094624088088136e-09, -2.1968322812052116e-10,
    7.9983664368042788e-12, -2.793206924215944e-13, 9.4405927753268867e-15, -3.1075414976174814e-16,
    1.0008006014568805e-17};
constexpr double kI3[kSeriesTerms] = {
    0.13333333333333333, 0.017460317460317461, -7.9365079365079365e-05, -2.0442520442520441e-05,
    1.5374469739549106e-06, -7.8863670133511402e-08, 3.4315972496800382e-09, -1.3560850846544851e-10,
    5.0231460571768502e-12, -1.7751432015349734e-13, 6.0513323924367409e-15, -2.0047129012530873e-16,
    6.4881992436518043e-18};

// g0 / omega^5, and the denominators of g1 and g2 over omega^4 and omega^5.
constexpr double kG0[kSeriesTerms] = {
    0.10000000000000001, 0.011904761904761904, 0.00069444444444444447, 2.5553150553150554e-05,
    6.5713607380274045e-07, 1.252605419272086e-08, 1.8424041679177067e-10, 2.1549573235501018e-12,
    2.0523637956722301e-14, 1.6224266146676277e-16, 1.0816185167457859e-18, 6.1630695735287436e-21,
    3.0359949995268178e-23};
constexpr double kG1Den[kSeriesTerms] = {
    0.050000000000000003, 0.0011904761904761906, 2.9761904761904762e-05, 1.5031265031265032e-07,
    5.2581897819993057e-09, -6.882447358637835e-11, 2.0816029511174237e-12, -5.1360180267981206e-14,
    1.3053322508971684e-15, -3.305312729102213e-17, 8.372694928863225e-19, -2.1208239758180543e-20,
    5.3721104890214208e-22};
constexpr double kG2Den[kSeriesTerms] = {
    -0.016666666666666666, -0.00079365079365079365, -1.6534391534391536e-05, -2.0041686708353376e-07,
    -1.6059043836821615e-09, -9.1765964781837793e-12, -3.936040156083729e-14, -1.3153016394598927e-16,
    -3.5231293914104271e-19, -7.7363403412613678e-22, -1.4183290625645841e-24, -2.204085567310931e-27,
    -2.9405903504764064e-30};

double even_series(const double (&c)[kSeriesTerms], double w)
{
    const double w2 = w * w;
    double acc = c[kSeriesTerms - 1];
    for (int k = kSeriesTerms - 2; k >= 0; --k)
        acc = acc * w2 + c[k];
    return acc;
}

constexpr double kNaiveLimitM1 = 700.0;
constexpr double kNaiveLimitM2 = 350.0;

double g0_of(double x) { return 3.0 * x + std::sinh(x) * (std::cosh(x) - 4.0); }

struct SinhCosh {
    double s, c;
};

// Both from one expm1; accurate to a few ulps for every x >= 0 short of overflow.
inline SinhCosh sinh_cosh(double x)
{
    const double u = std::expm1(x);
    const double r = u / (u + 1.0);
    return {0.5 * (u + r), 1.0 + 0.5 * u * r};
}

}  // namespace

const char* to_string(EvalMode mode)
{
    switch (mode) {
    case EvalMode::Naive: return "naive";
    case EvalMode::StableLargeOmega: return "stable";
    case EvalMode::Taylor5: return "taylor";
    case EvalMode::Auto: return "auto";
    }
    return "?";
}

EvalMode eval_mode_from_string(const char* name)
{
    if (std::strcmp(name, "naive") == 0) return EvalMode::Naive;
    if (std::strcmp(name, "stable") == 0) return EvalMode::StableLargeOmega;
    if (std::strcmp(name, "taylor") == 0) return EvalMode::Taylor5;
    if (std::strcmp(name, "auto") == 0) return EvalMode::Auto;
    throw InputError(std::string("unknown evaluation mode '") + name + "'");
}

ShapeParam::ShapeParam(double omega) : omega_(omega)
{
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw DomainError("shape parameter omega must be positive and finite, got " + std::to_string(omega));
}

double BasisVector::sum() const
{
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += v[static_cast<std::size_t>(i)];
    return s;
}

void check_m(int m)
{
    if (m != 1 && m != 2)
        throw DomainError("m must be 1 or 2, got " + std::to_string(m));
}

void check_unit(double t, const char* what)
{
    if (!(t >= 0.0 && t <= 1.0))
        throw DomainError(std::string(what) + ": t must lie in [0,1], got " + std::to_string(t));
}

ConstantsM1 constants_m1(ShapeParam omega)
{
    const double w = omega.value();
    const double e = std::exp(-w);
    ConstantsM1 k{};
    k.c1 = 2.0 * std::exp(-0.5 * w) / (1.0 + e);
    if (w < kSeriesBelow) {
        k.c2 = even_series(kC2, w);
        k.c3 = even_series(kC3, w);
        k.c3_over_c1 = even_series(kC3OverC1, w);
    } else {
        const double ome = -std::expm1(-w);
        k.c2 = (1.0 - e * e - 2.0 * w * e) / (w * ome * ome);
        const double h = 0.5 * w;
        const double coth = (1.0 + e) / ome;
        k.c3_over_c1 = (h * coth - 1.0) * coth / h;
        k.c3 = k.c3_over_c1 * k.c1;
    }
    return k;
}

ConstantsM2 constants_m2(ShapeParam omega)
{
    const double w = omega.value();
    const double e = std::exp(-w);
    ConstantsM2 k{};
    const double den = 1.0 + 4.0 * e + e * e;
    k.q0 = (1.0 + e) * (1.0 + e) / den;
    k.q1 = 2.0 * e / den;
    if (w < kSeriesBelow) {
        k.q2 = even_series(kQ2, w);
        k.q3 = even_series(kQ3, w);
        k.q4 = even_series(kQ4, w);
        k.q4_over_q1 = even_series(kQ4OverQ1, w);
        k.i3 = even_series(kI3, w);
    } else {
        const double ome = -std::expm1(-w);
        const double d4 = w * ome * ome * ome * ome;
        const double e2 = e * e, e3 = e2 * e, e4 = e2 * e2;
        k.q2 = (1.0 - 8.0 * e + 12.0 * w * e2 + 8.0 * e3 - e4) / (2.0 * d4);
        k.q3 = (1.0 + 10.0 * e - 6.0 * w * e - 12.0 * w * e2 - 10.0 * e3 - 6.0 * w * e3 - e4) / d4;
        const double r = 8.0 * w * e + 2.0 * w + 2.0 * w * e2 - 6.0 + 6.0 * e2;
        k.q4 = e * r / d4;
        k.q4_over_q1 = r * den / (2.0 * d4);
        k.i3 = r * (1.0 + e) * (1.0 + e) / (2.0 * d4);
    }
    const double sh = std::sinh(0.5 * w);
    if (w < kSeriesBelow) {
        const double w4 = w * w * w * w;
        k.g0 = even_series(kG0, w) * w4 * w;
        k.g1 = 4.0 / (sh * even_series(kG1Den, w) * w4);
        k.g2 = sh / (3.0 * even_series(kG2Den, w) * w4 * w);
    } else {
        k.g0 = g0_of(w);
        k.g1 = 4.0 / (sh * (std::cosh(w) - 3.0 * w / std::tanh(0.5 * w) + 5.0));
        k.g2 = sh / (3.0 * (3.0 * std::sinh(w) - w * (std::cosh(w) + 2.0)));
    }
    return k;
}

namespace detail {

template <class F>
void StableCoeffs<F>::init(int m, double omega)
{
    using std::exp;
    w = static_cast<F>(omega);
    iw = F(1) / w;
    const F ee = exp(-w);
    e[0] = 1;
    for (int i = 1; i < 8; ++i) e[i] = e[i - 1] * ee;
    const F E = e[1], E2 = e[2], E3 = e[3], E4 = e[4], E5 = e[5], E6 = e[6], E7 = e[7];
    const F em1 = E - F(1);
    if (m == 1) {
        s1_inv3 = F(1) / (E2 + 2 * w * E - 1);
        s1_y = -E2 * iw + (2 * iw - 1) * E - (iw - 1);
        s1_x = -(iw + 1) * E2 + (2 * iw + 1) * E - iw;
        s1_c = E3 * iw - (iw - 2) * E2 - (iw + 2) * E + iw;
        s1_t = em1 * em1 * em1;
        s1_inv2 = F(1) / ((2 * iw + 1) * E3 - (2 * iw - 5 - 2 * w) * E2 - (2 * iw + 5 - 2 * w) * E + 2 * iw - 1);

        ta = 2 * E * w;
        tb = E2 + 2 * w * E - 1;
        t_inv04 = F(1) / tb;
        tc = (E * w + 4 * E + w - 4) * iw;
        td = (E * w + 2 * E + w - 2) * iw;
        t_inv2 = F(1) / (2 * ((2 * iw + 1) * E - 2 * iw + 1));
        return;
    }
    s2_inv5 = F(1) / (E4 - 8 * E3 - 12 * w * E2 + 8 * E - 1);

    s2_4x3 = -2 * E4 - (1 + 6 * w) * E3 + 3 * (3 + 2 * w) * E2 - 7 * E + 1;
    s2_4x2 = 2 * E5 - 2 * E4 + 24 * (1 + w) * E3 - 8 * (7 + 3 * w) * E2 + 38 * E - 6;
    s2_4x = 3 * E5 - 27 * E4 + 12 * (2 - 3 * w) * E3 + 12 * (2 + 3 * w) * E2 - 27 * E + 3;
    s2_4tx = 6 * w * em1 * em1 * em1 * em1 * em1;
    s2_4y = E4 - 7 * E3 + 3 * (3 - 2 * w) * E2 - (1 - 6 * w) * E - 2;
    s2_4c = -6 * E5 + 38 * E4 - 8 * (7 - 3 * w) * E3 + 24 * (1 - w) * E2 - 2 * E + 2;
    s2_inv4 = F(1) / (E7 + (1 + 6 * w) * E6 - 27 * (3 + 2 * w) * E5 + (79 - 156 * w - 72 * w * w) * E4 +
                      (79 + 156 * w - 72 * w * w) * E3 - 27 * (3 - 2 * w) * E2 + (1 - 6 * w) * E + 1);

    s2_3y = -4 * iw * E4 - 4 * (iw + 3) * E3 + 4 * (3 * iw + 1) * E2 + 4 * (iw + 1) * E - 4 * (2 * iw - 1);
    s2_3y2 = iw * E3 + (3 * iw + 4) * E2 - (9 * iw + 2) * E + (5 * iw - 2);
    s2_3x = -4 * (2 * iw + 1) * E4 + 4 * (iw - 1) * E3 + 4 * (3 * iw - 1) * E2 - 4 * (iw - 3) * E - 4 * iw;
    s2_3x2 = (5 * iw + 2) * E3 - (9 * iw - 2) * E2 + (3 * iw - 4) * E + iw;
    s2_3c = 3 * iw * E5 + (9 * iw + 12) * E4 - 12 * iw * E3 - 12 * iw * E2 + (9 * iw - 12) * E + 3 * iw;
    s2_3t = 2 * em1 * em1 * em1 * em1 * em1;

    ta = 12 * E2 * w;
    tb = -E4 + 8 * E3 + 12 * E2 * w - 8 * E + 1;
    tc = E3 + 6 * E2 * w + 9 * E2 + 6 * E * w - 9 * E - 1;
    td = em1 * (E2 + 7 * E + 1);
    tf = -2 * (2 * E3 + 9 * E2 * w + 18 * E2 + 9 * E * w - 18 * E - 2);
    tg = 6 * E * w * (E + 1);
    th = (E2 * w + 3 * E2 + 4 * E * w + w - 3) * iw;
    tk = 2 * (E2 + 4 * E + 1);
    tl = 3 * (1 - E2) * iw;
    t_inv04 = F(1) / tb;
    t_inv13 = F(1) / (4 * tc);
    t_inv2 = F(1) / (12 * ((3 * iw + 1) * E2 + 4 * E - 3 * iw + 1));
    s2_inv3 = F(1) / (2 * ((3 * iw + 1) * E5 + (27 * iw + 31 + 6 * w) * E4 - 2 * (15 * iw - 23 - 15 * w) * E3 -
                           2 * (15 * iw + 23 - 15 * w) * E2 + (27 * iw - 31 + 6 * w) * E + 3 * iw - 1));
}

template struct StableCoeffs<double>;

}  // namespace detail

namespace {

template <class F>
F phi3_m1(const detail::StableCoeffs<F>& c, F t, F x, F y)
{
    return (x * x + 2 * c.w * t * x - 1) * y * c.s1_inv3;
}

template <class F>
F phi2_m1(const detail::StableCoeffs<F>& c, F t, F x, F y)
{
    return (c.s1_y * y + c.s1_x * x + c.s1_c + c.s1_t * t) * c.s1_inv2;
}

template <class F>
F phi5_m2(const detail::StableCoeffs<F>& c, F t, F x, F y)
{
    const F x2 = x * x;
    return (x2 * x2 - 8 * x2 * x - 12 * c.w * t * x2 + 8 * x - 1) * y * y * c.s2_inv5;
}

template <class F>
F phi4_m2(const detail::StableCoeffs<F>& c, F t, F x, F y)
{
    const F n = ((c.s2_4x3 * x + c.s2_4x2) * x + c.s2_4x + c.s2_4tx * t) * x + c.s2_4y * y + c.s2_4c;
    return n * y * c.s2_inv4;
}

template <class F>
F phi3_m2(const detail::StableCoeffs<F>& c, F t, F x, F y)
{
    const F n = (c.s2_3y2 * y + c.s2_3y) * y + (c.s2_3x2 * x + c.s2_3x) * x + c.s2_3c + c.s2_3t * t;
    return n * c.s2_inv3;
}

template <class F>
BasisVector phi_stable_impl(const detail::StableCoeffs<F>& c, int m, double td)
{
    using std::exp;
    const F t = td;
    const F s = F(1) - t;
    const F x = exp(-c.w * t);
    const F y = exp(-c.w * s);
    BasisVector out(2 * m + 2);
    if (m == 1) {
        out[0] = static_cast<double>(phi3_m1(c, s, y, x));
        out[1] = static_cast<double>(phi2_m1(c, s, y, x));
        out[2] = static_cast<double>(phi2_m1(c, t, x, y));
        out[3] = static_cast<double>(phi3_m1(c, t, x, y));
    } else {
        out[0] = static_cast<double>(phi5_m2(c, s, y, x));
        out[1] = static_cast<double>(phi4_m2(c, s, y, x));
        out[2] = static_cast<double>(phi3_m2(c, s, y, x));
        out[3] = static_cast<double>(phi3_m2(c, t, x, y));
        out[4] = static_cast<double>(phi4_m2(c, t, x, y));
        out[5] = static_cast<double>(phi5_m2(c, t, x, y));
    }
    return out;
}

// div(num, j) returns num / lo_j, or 0 where lo_j = 0.
template <class Div>
BasisVector corner_weights_impl(const BasisVector& up, const BasisVector& lo, Div div)
{
    const int n = lo.size();
    double tail_up[7], tail_lo[7];
    tail_up[n + 1] = 0.0;
    tail_lo[n] = 0.0;
    for (int i = n; i >= 0; --i) tail_up[i] = tail_up[i + 1] + up[i];
    for (int i = n - 1; i >= 0; --i) tail_lo[i] = tail_lo[i + 1] + lo[i];
    BasisVector lambda(n);
    double head_up = 0.0, head_lo = 0.0;
    for (int j = 0; j < n; ++j) {
        head_up += up[j];
        head_lo += lo[j];
        const double tu = tail_up[j + 1], tl = tail_lo[j + 1];
        lambda[j] = div(head_up + head_lo <= tu + tl ? head_lo - head_up : tu - tl, j);
    }
    return lambda;
}

// Numerators are a polynomial in t plus terms in X, X^2, Y, Y^2; the
// denominators are monomials in t and t - 1 times an omega constant.
template <class F>
BasisVector tau_stable_impl(const detail::StableCoeffs<F>& c, int m, double td)
{
    using std::exp;
    const F E = c.e[1], E2 = c.e[2];
    const F t = td;
    const F tm = t - F(1);
    const F X = exp(-c.w * t);
    const F Y = exp(c.w * tm);
    const F r = F(1) / (t * tm);
    const F it = r * tm, itm = r * t;
    const F t2 = t * t;
    if (m == 1) {
        BasisVector out(3);
        out[0] = static_cast<double>((E * Y - X - c.ta * tm) * itm * itm * c.t_inv04);
        out[1] = static_cast<double>(((E - 1 + X - Y) * c.iw - c.tc * t + c.td * t2) * r * c.t_inv2);
        out[2] = static_cast<double>(((Y - E * X - c.ta * t) * c.t_inv04 + t2) * it * it);
        return out;
    }
    BasisVector out(5);
    const F X2 = X * X, Y2 = Y * Y;
    const F t3 = t2 * t;
    const F it2 = it * it, itm2 = itm * itm;
    out[0] = static_cast<double>((X2 - 8 * E * X + (8 * Y - Y2) * E2 - c.ta * tm) * itm2 * itm2 * c.t_inv04);
    const F n1 = c.td - 2 * E * (E + 3) * Y + E * Y2 + 2 * (3 * E + 1) * X - X2 + c.tf * t +
                 c.tc * t2 * (6 - 4 * t + t2);
    out[1] = static_cast<double>(n1 * r * itm2 * c.t_inv13);
    const F n2 = (4 * (E + 1) * (Y - X) + X2 - Y2) * c.iw + c.tl - c.tk * t + c.th * t2 * (12 - 16 * t + 6 * t2);
    out[2] = static_cast<double>(n2 * r * r * c.t_inv2);
    const F n3 = 3 * E * (E - 1) - 2 * (3 * E + 1) * Y + Y2 + 2 * E * (E + 3) * X - E * X2 + c.tg * t +
                 c.tc * t3 * (3 * t - 4);
    out[3] = static_cast<double>(n3 * r * it2 * c.t_inv13);
    out[4] = static_cast<double>((8 * E * Y - Y2 + (X2 - 8 * X) * E2 - c.ta * t) * it2 * it2 * c.t_inv04 + 1);
    return out;
}

}  // namespace

Space::Space(int m, ShapeParam omega, StableVariant variant)
    : m_(m), w_(omega.value()), variant_(variant), blend_(variant == StableVariant::Blended && w_ < kBlendBelow)
{
    check_m(m);
    e1_ = std::exp(-w_);
    cd_.init(m, w_);
    if (m == 1) {
        k1_ = constants_m1(omega);
        vint_ = BasisVector(3);
        vint_[0] = k1_.c2;
        vint_[1] = k1_.c3_over_c1;
        vint_[2] = k1_.c2;
        if (w_ <= kNaiveLimitM1) {
            const double shw = std::sinh(w_), chw = std::cosh(w_);
            nv_ = {shw, chw, 1.0 / (shw - w_), 1.0 / ((w_ / std::tanh(0.5 * w_) - 2.0) * (w_ - shw))};
        }
    } else {
        k2_ = constants_m2(omega);
        vint_ = BasisVector(5);
        vint_[0] = k2_.q2;
        vint_[1] = k2_.q3;
        vint_[2] = k2_.q4_over_q1;
        vint_[3] = k2_.q3;
        vint_[4] = k2_.q2;
        if (w_ <= kNaiveLimitM2) {
            const double sh = std::sinh(0.5 * w_);
            nv_ = {sh, sh * sh * sh * sh, 1.0 / k2_.g0, 0.0};
        }
    }
}

EvalMode Space::resolve(EvalMode mode, const AutoThresholds& thr) const
{
    if (mode != EvalMode::Auto) return mode;
    return w_ < thr.for_m(m_) ? EvalMode::Taylor5 : EvalMode::StableLargeOmega;
}

BasisVector Space::psi(double t) const
{
    check_unit(t, "psi");
    if (m_ == 2) return varphi1(t);  // psi_{j,2} = varphi_{j,1}
    const double w = w_;
    const double inv = 1.0 / -std::expm1(-w);
    BasisVector out(2);
    out[0] = std::exp(-0.5 * w * t) * -std::expm1(-w * (1.0 - t)) * inv;
    out[1] = std::exp(-0.5 * w * (1.0 - t)) * -std::expm1(-w * t) * inv;
    return out;
}

// sinh ratios rewritten with expm1 so neither small nor large omega loses digits
BasisVector Space::varphi1(double t) const
{
    const double w = w_;
    const double inv = 1.0 / -std::expm1(-w);
    const double a = -std::expm1(-w * t);          // 1 - X
    const double b = -std::expm1(-w * (1.0 - t));  // 1 - Y
    const double p0 = std::exp(-0.5 * w * t) * b * inv;
    const double p1 = std::exp(-0.5 * w * (1.0 - t)) * a * inv;
    BasisVector v(3);
    v[0] = p0 * p0;
    v[1] = (1.0 + e1_) * a * b * inv * inv;
    v[2] = p1 * p1;
    return v;
}

BasisVector Space::varphi(double t) const
{
    check_unit(t, "varphi");
    const BasisVector v1 = varphi1(t);
    if (m_ == 1) return v1;
    BasisVector v2(5);
    v2[0] = v1[0] * v1[0];
    v2[1] = 2.0 * v1[0] * v1[1];
    v2[2] = v1[1] * v1[1] + 2.0 * v1[0] * v1[2];
    v2[3] = 2.0 * v1[1] * v1[2];
    v2[4] = v1[2] * v1[2];
    return v2;
}

BasisVector Space::phi(double t, EvalMode mode, const AutoThresholds& thr) const
{
    check_unit(t, "phi");
    if (t == 0.0 || t == 1.0) {
        BasisVector e(n_phi());
        e[t == 0.0 ? 0 : n_phi() - 1] = 1.0;
        return e;
    }
    switch (resolve(mode, thr)) {
    case EvalMode::Naive: return phi_naive(t);
    case EvalMode::Taylor5: return phi_taylor(t);
    default: return phi_stable(t);
    }
}

BasisVector Space::phi_naive(double t) const
{
    const double w = w_;
    BasisVector out(n_phi());
    if (m_ == 1) {
        if (w > kNaiveLimitM1)
            throw OverflowHazard("naive basis overflows for omega > 700 (m=1)");
        const double s = 1.0 - t;
        const SinhCosh hs = sinh_cosh(w * s), ht = sinh_cosh(w * t);
        out[0] = (hs.s - w * s) * nv_[2];
        out[3] = (ht.s - w * t) * nv_[2];
        out[1] = (-w * t - w * s * nv_[1] + w * hs.c + nv_[0] - ht.s - hs.s) * nv_[3];
        out[2] = (-w * s - w * t * nv_[1] + w * ht.c + nv_[0] - hs.s - ht.s) * nv_[3];
        return out;
    }
    if (w > kNaiveLimitM2)
        throw OverflowHazard("naive basis overflows for omega > 350 (m=2)");
    const double g1 = k2_.g1, g2 = k2_.g2;
    const double sh = nv_[0], sh4 = nv_[1], inv_g0 = nv_[2];
    // sinh and cosh of the full arguments from the half-argument pair.
    const SinhCosh ha = sinh_cosh(0.5 * (w - w * t)), hb = sinh_cosh(0.5 * w * t);
    const double a = ha.s, b = hb.s;
    const double a4 = a * a * a * a, b4 = b * b * b * b;
    const double ga = 3.0 * (w - w * t) + 2.0 * a * ha.c * (2.0 * a * a - 3.0);
    const double gb = 3.0 * (w * t) + 2.0 * b * hb.c * (2.0 * b * b - 3.0);
    out[0] = ga * inv_g0;
    out[5] = gb * inv_g0;
    out[1] = g1 * sh * (a4 - sh4 * ga * inv_g0);
    out[4] = g1 * sh * (b4 - sh4 * gb * inv_g0);
    // Products grouped so no intermediate exceeds exp(2 omega).
    const double g210 = g2 * g1 * k2_.g0, g21s = g2 * g1 * sh4;
    out[2] = -16.0 * g2 * a * a * a * b + g210 * a4 - g21s * ga;
    out[3] = -16.0 * g2 * b * b * b * a + g210 * b4 - g21s * gb;
    return out;
}

BasisVector Space::phi_stable(double t) const
{
    return blend_ ? phi_naive(t) : phi_stable_impl(cd_, m_, t);
}

namespace {

// Polynomial factors of the degree-5 Taylor expansions, right-end functions.
inline double t31(double t, double w2)
{
    const double t2 = t * t;
    return t2 * t * (((10.0 * t2 - 21.0) * t2 + 11.0) * w2 * w2 + 420.0 * (t2 - 1.0) * w2 + 8400.0) / 8400.0;
}

inline double t21(double t, double w2)
{
    const double p4 = (((30.0 * t - 40.0) * t + 23.0) * t - 12.0) * t - 3.0;
    const double p2 = (3.0 * t - 2.0) * t + 1.0;
    return 3.0 * t * t * (1.0 - t) * (p4 * w2 * w2 + 420.0 * p2 * w2 + 25200.0) / 25200.0;
}

inline double t52(double t, double w2)
{
    const double t2 = t * t;
    const double t5 = t2 * t2 * t;
    return t5 * (((49.0 * t2 - 100.0) * t2 + 51.0) * w2 * w2 + 840.0 * (t2 - 1.0) * w2 + 7056.0) / 7056.0;
}

inline double t42(double t, double w2)
{
    const double p4 = (((245.0 * t - 196.0) * t - 96.0) * t + 44.0) * t - 1.0;
    const double p2 = (5.0 * t - 2.0) * t - 1.0;
    const double t2 = t * t;
    return 5.0 * t2 * t2 * (1.0 - t) * (p4 * w2 * w2 + 840.0 * p2 * w2 + 35280.0) / 35280.0;
}

inline double t32(double t, double w2)
{
    const double p4 = (((245.0 * t - 392.0) * t + 253.0) * t - 82.0) * t + 3.0;
    const double p2 = (10.0 * t - 8.0) * t + 3.0;
    const double s = 1.0 - t;
    return 10.0 * t * t * t * s * s * (p4 * w2 * w2 + 420.0 * p2 * w2 + 35280.0) / 35280.0;
}

}  // namespace

BasisVector Space::phi_taylor(double t) const
{
    const double w2 = w_ * w_;
    const double s = 1.0 - t;
    BasisVector out(n_phi());
    if (m_ == 1) {
        out[0] = t31(s, w2);
        out[1] = t21(s, w2);
        out[2] = t21(t, w2);
        out[3] = t31(t, w2);
    } else {
        out[0] = t52(s, w2);
        out[1] = t42(s, w2);
        out[2] = t32(s, w2);
        out[3] = t32(t, w2);
        out[4] = t42(t, w2);
        out[5] = t52(t, w2);
    }
    return out;
}

BasisVector Space::tau(double t, EvalMode mode, const AutoThresholds& thr) const
{
    if (!(t > 0.0 && t < 1.0))
        throw DomainError("tau: t must lie strictly inside (0,1), got " + std::to_string(t));
    switch (resolve(mode, thr)) {
    case EvalMode::Naive: return tau_from_phi(phi_naive(t), t);
    case EvalMode::Taylor5: return tau_from_phi(phi_taylor(t), t);
    default: return tau_stable(t);
    }
}

namespace {

// tau_j = 1 - lambda_j against the degree-N Bernstein basis, with the same
// head/tail choice as corner_weights; fixed N so the sums unroll.
template <int N>
BasisVector tau_against_bernstein(const BasisVector& p, double t)
{
    static_assert(N == 2 || N == 4);
    const double s = 1.0 - t;
    const double r = 1.0 / (t * s);
    const double it = r * s, is = r * t;
    double lo[N + 1], inv[N + 1];
    if constexpr (N == 2) {
        lo[0] = s * s;
        lo[1] = 2.0 * t * s;
        lo[2] = t * t;
        inv[0] = is * is;
        inv[1] = 0.5 * r;
        inv[2] = it * it;
    } else {
        const double s2 = s * s, t2 = t * t, is2 = is * is, it2 = it * it;
        lo[0] = s2 * s2;
        lo[1] = 4.0 * t * s2 * s;
        lo[2] = 6.0 * t2 * s2;
        lo[3] = 4.0 * t2 * t * s;
        lo[4] = t2 * t2;
        inv[0] = is2 * is2;
        inv[1] = 0.25 * it * is2 * is;
        inv[2] = it2 * is2 / 6.0;
        inv[3] = 0.25 * it2 * it * is;
        inv[4] = it2 * it2;
    }
    // Reciprocals from r underflow or overflow this close to the ends.
    const bool normal = lo[0] > 1e-280 && lo[N] > 1e-280;
    // p has N + 2 entries, lo has N + 1.
    double tail_up[N + 3], tail_lo[N + 2];
    tail_up[N + 2] = 0.0;
    tail_lo[N + 1] = 0.0;
    for (int i = N + 1; i >= 0; --i) tail_up[i] = tail_up[i + 1] + p[i];
    for (int i = N; i >= 0; --i) tail_lo[i] = tail_lo[i + 1] + lo[i];
    BasisVector out(N + 1);
    double head_up = 0.0, head_lo = 0.0;
    for (int j = 0; j <= N; ++j) {
        head_up += p[j];
        head_lo += lo[j];
        const double tu = tail_up[j + 1], tl = tail_lo[j + 1];
        const double num = head_up + head_lo <= tu + tl ? head_lo - head_up : tu - tl;
        const double lambda = normal ? num * inv[j] : (lo[j] > 0.0 ? num / lo[j] : 0.0);
        out[j] = 1.0 - lambda;
    }
    return out;
}

}  // namespace

BasisVector Space::tau_from_phi(const BasisVector& p, double t) const
{
    return m_ == 1 ? tau_against_bernstein<2>(p, t) : tau_against_bernstein<4>(p, t);
}

BasisVector Space::tau_stable(double t) const
{
    return blend_ ? tau_from_phi(phi_naive(t), t) : tau_stable_impl(cd_, m_, t);
}

BasisVector corner_weights(const BasisVector& up, const BasisVector& lo)
{
    return corner_weights_impl(up, lo, [&](double num, int j) { return lo[j] > 0.0 ? num / lo[j] : 0.0; });
}

BasisVector bernstein(int degree, double t)
{
    BasisVector b(degree + 1);
    const double s = 1.0 - t;
    b[0] = 1.0;
    for (int k = 1; k <= degree; ++k) {
        double saved = 0.0;
        for (int j = 0; j < k; ++j) {
            const double tmp = b[j];
            b[j] = saved + s * tmp;
            saved = t * tmp;
        }
        b[k] = saved;
    }
    return b;
}

BasisVector psi(int m, ShapeParam omega, double t)
{
    check_m(m);
    const Space s1(1, omega);
    return m == 1 ? s1.psi(t) : s1.varphi(t);
}

BasisVector varphi(int m, ShapeParam omega, double t) { return Space(m, omega).varphi(t); }

BasisVector phi(int m, ShapeParam omega, double t, EvalMode mode, const AutoThresholds& thr)
{
    return Space(m, omega).phi(t, mode, thr);
}

BasisVector taylor_phi(int m, ShapeParam omega, double t) { return Space(m, omega).phi(t, EvalMode::Taylor5); }

BasisVector tau(int m, ShapeParam omega, double t, EvalMode mode, const AutoThresholds& thr)
{
    return Space(m, omega).tau(t, mode, thr);
}

}  // namespace eph
