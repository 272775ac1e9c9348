#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eph/hermite.hpp"

namespace eph {

// Curve document: {"m", "omega", "dim", "control_points": [[x, y(, z)], ...]}.
// Parse errors throw InputError naming the offending field.
EphCurve curve_from_json(const std::string& text);
std::string curve_to_json(const EphCurve& curve, const Preimage* preimage = nullptr);

// Preimage document: {"m", "omega", "coeffs": [[w, x, y, z], ...]}.
Preimage preimage_from_json(const std::string& text);
std::string preimage_to_json(const Preimage& pre);

// Hermite document: {"r0", "r1", "di", "df", "omega"} plus either "tag" (planar)
// or "angles": {"eta0", "eta1", "eta2"} / {"eta_m", "delta_eta", "eta1"}.
struct HermiteRequest {
    HermiteProblem problem;
    bool planar = false;
    PlanarTag tag = PlanarTag::PP;
    AngleChoice angles;
};
HermiteRequest hermite_request_from_json(const std::string& text);

// Rows "t,x,y[,z]" with a header line; planar curves omit z.
std::string samples_csv(const std::vector<double>& ts, const std::vector<Vec3>& pts, int dim);

// Plain polyline of the xy projection with an autoscaled viewBox.
std::string svg_polyline(const std::vector<Vec3>& pts, int width = 640, int height = 480);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace eph
