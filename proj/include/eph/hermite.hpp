#pragma once

#include <string>

#include "eph/curve.hpp"

namespace eph {

// C1 data for an EP_2 interpolant. Planar problems use z = 0 throughout.
struct HermiteProblem {
    Vec3 r0, r1;  // r(0), r(1)
    Vec3 di, df;  // r'(0), r'(1)
    double omega = 1.0;
};

// Stored canonically as (eta0, eta1, eta2).
struct AngleChoice {
    double eta0 = 0.0, eta1 = 0.0, eta2 = 0.0;

    static AngleChoice from_mean(double eta_m, double delta_eta, double eta1)
    {
        return {eta_m - 0.5 * delta_eta, eta1, eta_m + 0.5 * delta_eta};
    }
};

// Signs of A_0 and A_2 with A_1 taken positive.
enum class PlanarTag { PP, PM, MP, MM };

const char* to_string(PlanarTag tag);
PlanarTag planar_tag_from_string(const std::string& s);
AngleChoice angles_for(PlanarTag tag);

struct HermiteSolution {
    Preimage preimage;
    EphCurve curve;
};

HermiteSolution solve_spatial(const HermiteProblem& problem, const AngleChoice& angles);

// Returns a dim = 2 curve; the constant z component is dropped.
HermiteSolution solve_planar(const HermiteProblem& problem, PlanarTag tag);

// r0 = (0, 1/(2w)), r1 = (1, cosh(2w)/(2w)), di = (1, 0), df = (1, sinh 2w):
// samples of (t, cosh(2wt)/(2w)).
HermiteProblem cosh_problem(double omega);
EphCurve reproduce_hyperbolic(double omega);

}  // namespace eph
