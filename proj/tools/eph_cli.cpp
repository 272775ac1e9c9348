// eph: evaluate, interpolate and benchmark EPH curves.
// Exit codes: 0 ok, 2 bad input, 3 domain error, 4 degenerate geometry.

#include <cmath>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eph/bench.hpp"
#include "eph/error.hpp"
#include "eph/io.hpp"

namespace {

using namespace eph;

void emit(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-")
        std::cout << text;
    else
        write_file(path, text);
}

std::vector<double> unit_grid(int n)
{
    std::vector<double> ts(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ts[static_cast<std::size_t>(i)] = static_cast<double>(i) / (n - 1);
    return ts;
}

std::vector<Vec3> sample(const EphCurve& c, const std::vector<double>& ts, EvalMethod method, EvalMode mode)
{
    const PointEvaluator ev(c.m(), ShapeParam(c.omega()), method, mode);
    std::vector<Vec3> pts;
    pts.reserve(ts.size());
    for (double t : ts) pts.push_back(ev(c, t));
    return pts;
}

struct EvalArgs {
    std::string curve, method = "direct", mode = "auto", out, plot;
    int grid = 101;
};

int cmd_eval(const EvalArgs& a)
{
    if (a.curve.empty()) throw InputError("--curve is required");
    if (a.grid < 2) throw InputError("--grid must be >= 2");
    const EphCurve c = curve_from_json(read_file(a.curve));
    const auto ts = unit_grid(a.grid);
    const auto pts = sample(c, ts, eval_method_from_string(a.method), eval_mode_from_string(a.mode.c_str()));
    emit(a.out, samples_csv(ts, pts, c.dim()));
    if (!a.plot.empty()) write_file(a.plot, svg_polyline(pts));
    return 0;
}

struct HermiteArgs {
    std::string problem, preset, out, plot;
    double omega = 0.5;
};

int cmd_hermite(const HermiteArgs& a)
{
    HermiteRequest req;
    if (!a.preset.empty()) {
        if (a.preset != "cosh") throw InputError("unknown preset '" + a.preset + "' (cosh)");
        req.problem = cosh_problem(a.omega);
        req.planar = true;
        req.tag = PlanarTag::PP;
    } else {
        if (a.problem.empty()) throw InputError("--problem or --preset is required");
        req = hermite_request_from_json(read_file(a.problem));
    }
    const HermiteSolution sol =
        req.planar ? solve_planar(req.problem, req.tag) : solve_spatial(req.problem, req.angles);
    emit(a.out, curve_to_json(sol.curve, &sol.preimage));
    if (!a.plot.empty()) {
        const auto ts = unit_grid(501);
        write_file(a.plot, svg_polyline(sample(sol.curve, ts, EvalMethod::Direct, EvalMode::Auto)));
    }
    return 0;
}

struct BasisArgs {
    int m = 1, grid = 11;
    double omega = 1.0;
    std::string kind = "phi", mode = "auto", out;
};

int cmd_basis(const BasisArgs& a)
{
    if (a.grid < 2) throw InputError("--grid must be >= 2");
    const Space sp(a.m, ShapeParam(a.omega));
    const EvalMode mode = eval_mode_from_string(a.mode.c_str());
    std::ostringstream os;
    os.precision(17);
    os << "# basis kind=" << a.kind << " m=" << a.m << " omega=" << a.omega << " mode=" << a.mode
       << " grid=" << a.grid << "\n";
    bool header = false;
    for (double t : unit_grid(a.grid)) {
        BasisVector b;
        if (a.kind == "phi")
            b = sp.phi(t, mode);
        else if (a.kind == "varphi")
            b = sp.varphi(t);
        else if (a.kind == "psi")
            b = sp.psi(t);
        else if (a.kind == "tau") {
            if (t == 0.0 || t == 1.0) continue;
            b = sp.tau(t, mode);
        } else
            throw InputError("unknown --kind '" + a.kind + "' (phi, varphi, psi, tau)");
        if (!header) {
            os << "t";
            for (int i = 0; i < b.size(); ++i) os << "," << a.kind << i;
            os << "\n";
            header = true;
        }
        os << t;
        for (double v : b) os << "," << v;
        os << "\n";
    }
    emit(a.out, os.str());
    return 0;
}

struct BenchArgs {
    std::string experiment = "breakpoints", out, methods = "direct,decasteljau,woznychudy,new";
    int d = 3, m = 1, curves = 100, grid = 501, omegas = 500, reps = 5, threads = 0;
    double omega_max = 2.0;
    std::uint64_t seed = 1;
};

std::vector<EvalMethod> method_list(const std::string& csv)
{
    std::vector<EvalMethod> out;
    std::stringstream ss(csv);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) out.push_back(eval_method_from_string(item));
    if (out.empty()) throw InputError("--methods is empty");
    return out;
}

int cmd_bench(const BenchArgs& a)
{
    const auto methods = method_list(a.methods);
    if (a.experiment == "rho" || a.experiment == "breakpoints") {
        RhoConfig cfg;
        cfg.d = a.d;
        cfg.m = a.m;
        cfg.n_curves = a.curves;
        cfg.grid_points = a.grid;
        cfg.omega_grid = RhoConfig::default_omega_grid(a.omegas, a.omega_max);
        cfg.seed = a.seed;
        cfg.threads = a.threads;
        std::vector<std::vector<RhoPoint>> series;
        for (EvalMethod m : methods) series.push_back(rho(cfg, m));
        if (a.experiment == "rho") {
            emit(a.out, rho_csv(cfg, methods, series));
        } else {
            std::vector<BreakpointResult> res;
            for (std::size_t i = 0; i < methods.size(); ++i) res.push_back(argmin_rho(methods[i], series[i]));
            emit(a.out, breakpoints_csv(cfg, res));
        }
        return 0;
    }
    if (a.experiment == "timing") {
        TimingConfig cfg;
        cfg.d = a.d;
        cfg.m = a.m;
        cfg.n_curves = a.curves;
        cfg.grid_points = a.grid;
        cfg.repetitions = a.reps;
        cfg.seed = a.seed;
        emit(a.out, timing_csv(cfg, time_methods(cfg, methods)));
        return 0;
    }
    throw InputError("unknown --experiment '" + a.experiment + "' (rho, breakpoints, timing)");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"EPH curves: evaluation, Hermite interpolation, basis inspection and benchmarks"};
    app.require_subcommand(1);

    EvalArgs ea;
    auto* eval = app.add_subcommand("eval", "Sample a curve given as JSON");
    eval->add_option("--curve", ea.curve, "curve JSON file")->required();
    eval->add_option("--method", ea.method, "direct|decasteljau|woznychudy|new");
    eval->add_option("--mode", ea.mode, "naive|stable|taylor|auto");
    eval->add_option("--grid", ea.grid, "number of equispaced samples");
    eval->add_option("--out", ea.out, "CSV output (default stdout)");
    eval->add_option("--plot", ea.plot, "SVG polyline output");

    HermiteArgs ha;
    auto* herm = app.add_subcommand("hermite", "Solve a C1 Hermite problem in EP_2");
    herm->add_option("--problem", ha.problem, "problem JSON file");
    herm->add_option("--preset", ha.preset, "built-in problem: cosh");
    herm->add_option("--omega", ha.omega, "shape parameter for --preset");
    herm->add_option("--out", ha.out, "curve JSON output (default stdout)");
    herm->add_option("--plot", ha.plot, "SVG polyline of 501 samples");

    BasisArgs ba;
    auto* basis = app.add_subcommand("basis", "Tabulate basis functions");
    basis->add_option("--m", ba.m, "1 or 2");
    basis->add_option("--omega", ba.omega, "shape parameter")->required();
    basis->add_option("--grid", ba.grid, "number of equispaced t values");
    basis->add_option("--kind", ba.kind, "phi|varphi|psi|tau");
    basis->add_option("--mode", ba.mode, "naive|stable|taylor|auto");
    basis->add_option("--out", ba.out, "CSV output (default stdout)");

    BenchArgs bb;
    auto* bench = app.add_subcommand("bench", "Stability and timing experiments");
    bench->add_option("--experiment", bb.experiment, "rho|breakpoints|timing");
    bench->add_option("--d", bb.d, "2 or 3");
    bench->add_option("--m", bb.m, "1 or 2");
    bench->add_option("--seed", bb.seed, "mt19937_64 seed");
    bench->add_option("--curves", bb.curves, "random curves");
    bench->add_option("--grid", bb.grid, "t samples per curve");
    bench->add_option("--omegas", bb.omegas, "omega grid size (rho, breakpoints)");
    bench->add_option("--omega-max", bb.omega_max, "omega grid upper end (rho, breakpoints)");
    bench->add_option("--reps", bb.reps, "repetitions per timing cell");
    bench->add_option("--threads", bb.threads, "worker threads for rho (0: all cores)");
    bench->add_option("--methods", bb.methods, "comma-separated methods");
    bench->add_option("--out", bb.out, "CSV output (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*eval) return cmd_eval(ea);
        if (*herm) return cmd_hermite(ha);
        if (*basis) return cmd_basis(ba);
        if (*bench) return cmd_bench(bb);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ZeroVector& e) {
        std::cerr << "degenerate: zero vector: " << e.what() << "\n";
        return 4;
    } catch (const DegenerateDirection& e) {
        std::cerr << "degenerate: " << e.what() << "\n";
        return 4;
    } catch (const SingularControlBlock& e) {
        std::cerr << "degenerate: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
