#include "eph/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "eph/error.hpp"

namespace eph {

using nlohmann::json;

namespace {

json parse(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

const json& field(const json& j, const char* name, const char* prefix = "")
{
    if (!j.is_object()) throw InputError("expected a JSON object");
    auto it = j.find(name);
    if (it == j.end()) throw InputError(std::string("missing field '") + prefix + name + "'");
    return *it;
}

double number(const json& j, const std::string& where)
{
    if (!j.is_number()) throw InputError("field '" + where + "' must be a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) throw InputError("field '" + where + "' must be finite");
    return x;
}

int integer(const json& j, const std::string& where)
{
    if (!j.is_number_integer()) throw InputError("field '" + where + "' must be an integer");
    return j.get<int>();
}

Vec3 vec(const json& j, const std::string& where, int* dim_out = nullptr)
{
    if (!j.is_array() || j.size() < 2 || j.size() > 3)
        throw InputError("field '" + where + "' must be an array of 2 or 3 numbers");
    Vec3 v;
    v.x = number(j[0], where + "[0]");
    v.y = number(j[1], where + "[1]");
    if (j.size() == 3) v.z = number(j[2], where + "[2]");
    if (dim_out) *dim_out = static_cast<int>(j.size());
    return v;
}

json to_json(const Vec3& v, int dim)
{
    json a = json::array({v.x, v.y});
    if (dim == 3) a.push_back(v.z);
    return a;
}

}  // namespace

EphCurve curve_from_json(const std::string& text)
{
    const json j = parse(text);
    const int m = integer(field(j, "m"), "m");
    const double omega = number(field(j, "omega"), "omega");
    const json& pts = field(j, "control_points");
    if (!pts.is_array()) throw InputError("field 'control_points' must be an array");
    int dim = 0;
    if (j.contains("dim")) dim = integer(j["dim"], "dim");
    std::vector<Vec3> cps;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        int di = 0;
        cps.push_back(vec(pts[i], "control_points[" + std::to_string(i) + "]", &di));
        if (dim == 0) dim = di;
        if (di != dim) throw InputError("field 'control_points[" + std::to_string(i) + "]' has the wrong dimension");
    }
    if (m != 1 && m != 2) throw InputError("field 'm' must be 1 or 2");
    if (static_cast<int>(cps.size()) != 2 * m + 2)
        throw InputError("field 'control_points' needs " + std::to_string(2 * m + 2) + " points, got " +
                         std::to_string(cps.size()));
    if (!(omega > 0.0)) throw InputError("field 'omega' must be positive");
    try {
        return EphCurve(m, omega, dim, std::move(cps));
    } catch (const DomainError& e) {
        throw InputError(e.what());
    }
}

std::string curve_to_json(const EphCurve& curve, const Preimage* preimage)
{
    json j;
    j["m"] = curve.m();
    j["omega"] = curve.omega();
    j["dim"] = curve.dim();
    json pts = json::array();
    for (const auto& p : curve.control_points()) pts.push_back(to_json(p, curve.dim()));
    j["control_points"] = pts;
    if (preimage) {
        json q = json::array();
        for (const auto& a : preimage->coeffs) q.push_back({a.w, a.x, a.y, a.z});
        j["preimage"] = q;
    }
    return j.dump(2) + "\n";
}

Preimage preimage_from_json(const std::string& text)
{
    const json j = parse(text);
    Preimage pre;
    pre.m = integer(field(j, "m"), "m");
    pre.omega = number(field(j, "omega"), "omega");
    const json& cs = field(j, "coeffs");
    if (!cs.is_array()) throw InputError("field 'coeffs' must be an array");
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const std::string where = "coeffs[" + std::to_string(i) + "]";
        if (!cs[i].is_array() || cs[i].size() != 4) throw InputError("field '" + where + "' must hold 4 numbers");
        pre.coeffs.push_back({number(cs[i][0], where), number(cs[i][1], where), number(cs[i][2], where),
                              number(cs[i][3], where)});
    }
    try {
        pre.validate();
    } catch (const DomainError& e) {
        throw InputError(e.what());
    }
    return pre;
}

std::string preimage_to_json(const Preimage& pre)
{
    json j;
    j["m"] = pre.m;
    j["omega"] = pre.omega;
    json q = json::array();
    for (const auto& a : pre.coeffs) q.push_back({a.w, a.x, a.y, a.z});
    j["coeffs"] = q;
    return j.dump(2) + "\n";
}

HermiteRequest hermite_request_from_json(const std::string& text)
{
    const json j = parse(text);
    HermiteRequest req;
    int d0 = 0, d1 = 0, d2 = 0, d3 = 0;
    req.problem.r0 = vec(field(j, "r0"), "r0", &d0);
    req.problem.r1 = vec(field(j, "r1"), "r1", &d1);
    req.problem.di = vec(field(j, "di"), "di", &d2);
    req.problem.df = vec(field(j, "df"), "df", &d3);
    req.problem.omega = number(field(j, "omega"), "omega");
    if (!(req.problem.omega > 0.0)) throw InputError("field 'omega' must be positive");
    if (j.contains("tag")) {
        if (!j["tag"].is_string()) throw InputError("field 'tag' must be a string");
        req.planar = true;
        req.tag = planar_tag_from_string(j["tag"].get<std::string>());
        if (d0 == 3 || d1 == 3 || d2 == 3 || d3 == 3) {
            for (const Vec3* v : {&req.problem.r0, &req.problem.r1, &req.problem.di, &req.problem.df})
                if (v->z != 0.0) throw InputError("planar problem needs z = 0 in every vector");
        }
    } else if (j.contains("angles")) {
        const json& a = j["angles"];
        if (!a.is_object()) throw InputError("field 'angles' must be an object");
        if (a.contains("eta_m")) {
            req.angles = AngleChoice::from_mean(number(a["eta_m"], "angles.eta_m"),
                                                number(field(a, "delta_eta", "angles."), "angles.delta_eta"),
                                                number(field(a, "eta1", "angles."), "angles.eta1"));
        } else {
            req.angles = {number(field(a, "eta0", "angles."), "angles.eta0"), number(field(a, "eta1", "angles."), "angles.eta1"),
                          number(field(a, "eta2", "angles."), "angles.eta2")};
        }
    } else {
        throw InputError("missing field 'tag' or 'angles'");
    }
    return req;
}

std::string samples_csv(const std::vector<double>& ts, const std::vector<Vec3>& pts, int dim)
{
    std::ostringstream os;
    os.precision(17);
    os << (dim == 3 ? "t,x,y,z\n" : "t,x,y\n");
    for (std::size_t i = 0; i < pts.size(); ++i) {
        os << ts[i] << "," << pts[i].x << "," << pts[i].y;
        if (dim == 3) os << "," << pts[i].z;
        os << "\n";
    }
    return os.str();
}

std::string svg_polyline(const std::vector<Vec3>& pts, int width, int height)
{
    if (pts.size() < 2) throw DomainError("a polyline needs at least 2 samples");
    double x0 = pts[0].x, x1 = x0, y0 = pts[0].y, y1 = y0;
    for (const auto& p : pts) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    const double pad = 0.05 * std::max({x1 - x0, y1 - y0, 1e-12});
    std::ostringstream os;
    os.precision(10);
    // y is flipped so the plot reads with y up.
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"" << x0 - pad << " " << -(y1 + pad) << " " << (x1 - x0) + 2 * pad << " "
       << (y1 - y0) + 2 * pad << "\" preserveAspectRatio=\"xMidYMid meet\">\n";
    os << "<polyline fill=\"none\" stroke=\"black\" vector-effect=\"non-scaling-stroke\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) os << (i ? " " : "") << pts[i].x << "," << -pts[i].y;
    os << "\"/>\n</svg>\n";
    return os.str();
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
}

}  // namespace eph
