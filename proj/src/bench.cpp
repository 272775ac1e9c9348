#include "eph/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "eph/error.hpp"

namespace eph {

namespace {

std::string fmt(double x)
{
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

std::string join(const std::vector<double>& xs)
{
    if (xs.empty()) return "";
    return fmt(xs.front()) + ".." + fmt(xs.back()) + " (" + std::to_string(xs.size()) + " values)";
}

void check_dm(int d, int m)
{
    if (d != 2 && d != 3) throw DomainError("d must be 2 or 3");
    check_m(m);
}

}  // namespace

std::vector<double> RhoConfig::default_omega_grid(int n, double hi)
{
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) out.push_back(hi * k / n);
    return out;
}

void RhoConfig::validate() const
{
    check_dm(d, m);
    if (n_curves < 1) throw DomainError("n_curves must be >= 1");
    if (grid_points < 2) throw DomainError("grid_points must be >= 2");
    if (omega_grid.empty()) throw DomainError("empty omega grid");
    for (double w : omega_grid)
        if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("omega grid values must be positive");
}

EvalMode rho_mode(EvalMethod method)
{
    return method == EvalMethod::Direct ? EvalMode::Naive : EvalMode::StableLargeOmega;
}

std::vector<std::vector<Vec3>> random_polygons(std::mt19937_64& rng, int n, int d, int m)
{
    std::uniform_real_distribution<double> u(std::nextafter(0.0, 1.0), 1.0);
    std::vector<std::vector<Vec3>> out(static_cast<std::size_t>(n));
    for (auto& poly : out) {
        poly.resize(static_cast<std::size_t>(2 * m + 2));
        for (auto& p : poly) {
            p.x = u(rng);
            p.y = u(rng);
            p.z = d == 3 ? u(rng) : 0.0;
        }
    }
    return out;
}

std::vector<RhoPoint> rho(const RhoConfig& cfg, EvalMethod method)
{
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);
    const auto polys = random_polygons(rng, cfg.n_curves, cfg.d, cfg.m);
    const int ng = cfg.grid_points;
    const std::size_t nw = cfg.omega_grid.size();
    std::vector<RhoPoint> out(nw);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        std::vector<BasisVector> taylor(static_cast<std::size_t>(ng));
        for (std::size_t k = next++; k < nw; k = next++) {
            const double w = cfg.omega_grid[k];
            const Space sp(cfg.m, ShapeParam(w), cfg.variant);
            const PointEvaluator ev(cfg.m, ShapeParam(w), method, rho_mode(method), AutoThresholds{},
                                    cfg.variant);
            for (int i = 0; i < ng; ++i)
                taylor[static_cast<std::size_t>(i)] = sp.phi_taylor(static_cast<double>(i) / (ng - 1));
            double worst = 0.0;
            for (const auto& poly : polys) {
                double err = 0.0, ref = 0.0;
                for (int i = 0; i < ng; ++i) {
                    const double t = static_cast<double>(i) / (ng - 1);
                    const BasisVector& T = taylor[static_cast<std::size_t>(i)];
                    Vec3 exact;
                    for (int j = 0; j < T.size(); ++j) exact += T[j] * poly[static_cast<std::size_t>(j)];
                    const Vec3 got = ev(poly.data(), t);
                    const double e = norm_inf(exact - got);
                    err = std::isnan(e) ? std::numeric_limits<double>::infinity() : std::max(err, e);
                    ref = std::max(ref, norm_inf(exact));
                }
                worst = std::max(worst, err / ref);
            }
            out[k] = {w, worst};
        }
    };
    unsigned n_threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads) : std::thread::hardware_concurrency();
    n_threads = std::max(1u, std::min<unsigned>(n_threads, static_cast<unsigned>(nw)));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n_threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return out;
}

BreakpointResult argmin_rho(EvalMethod method, const std::vector<RhoPoint>& series)
{
    if (series.empty()) throw DomainError("empty rho series");
    BreakpointResult best{method, series.front().omega, std::numeric_limits<double>::infinity()};
    for (const auto& p : series)
        if (p.rho < best.rho_at_min) best = {method, p.omega, p.rho};
    return best;
}

BreakpointResult find_omega_bar(const RhoConfig& cfg, EvalMethod method)
{
    return argmin_rho(method, rho(cfg, method));
}

std::vector<double> TimingConfig::default_timing_omegas()
{
    std::vector<double> out;
    for (int k = -10; k <= 10; ++k) out.push_back(0.096 + std::ldexp(1.0, k));
    return out;
}

void TimingConfig::validate() const
{
    check_dm(d, m);
    if (n_curves < 1) throw DomainError("n_curves must be >= 1");
    if (grid_points < 2) throw DomainError("grid_points must be >= 2");
    if (repetitions < 1) throw DomainError("repetitions must be >= 1");
    if (omegas.empty()) throw DomainError("empty omega list");
    for (double w : omegas)
        if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("omega values must be positive");
}

std::vector<TimingRow> time_methods(const TimingConfig& cfg, const std::vector<EvalMethod>& methods)
{
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);
    const auto polys = random_polygons(rng, cfg.n_curves, cfg.d, cfg.m);
    const int ng = cfg.grid_points;
    std::vector<TimingRow> rows;
    volatile double sink = 0.0;
    for (double w : cfg.omegas) {
        for (EvalMethod method : methods) {
            std::vector<double> reps;
            for (int r = 0; r < cfg.repetitions; ++r) {
                const auto t0 = std::chrono::steady_clock::now();
                const PointEvaluator ev(cfg.m, ShapeParam(w), method, EvalMode::Auto, cfg.thresholds);
                double acc = 0.0;
                for (const auto& poly : polys)
                    for (int i = 0; i < ng; ++i) acc += ev(poly.data(), static_cast<double>(i) / (ng - 1)).x;
                const auto t1 = std::chrono::steady_clock::now();
                sink = sink + acc;
                reps.push_back(std::chrono::duration<double>(t1 - t0).count());
            }
            std::nth_element(reps.begin(), reps.begin() + reps.size() / 2, reps.end());
            rows.push_back({method, w, reps[reps.size() / 2]});
        }
    }
    return rows;
}

double total_seconds(const std::vector<TimingRow>& rows, EvalMethod method)
{
    double s = 0.0;
    for (const auto& r : rows)
        if (r.method == method) s += r.seconds;
    return s;
}

std::string rho_csv(const RhoConfig& cfg, const std::vector<EvalMethod>& methods,
                    const std::vector<std::vector<RhoPoint>>& series)
{
    std::ostringstream os;
    os << "# experiment=rho d=" << cfg.d << " m=" << cfg.m << " n_curves=" << cfg.n_curves
       << " grid_points=" << cfg.grid_points << " omega_grid=" << join(cfg.omega_grid) << " seed=" << cfg.seed
       << " rng=mt19937_64\n";
    os << "omega";
    for (EvalMethod m : methods) os << ",rho_" << to_string(m);
    os << "\n";
    for (std::size_t k = 0; k < cfg.omega_grid.size(); ++k) {
        os << fmt(cfg.omega_grid[k]);
        for (const auto& s : series) os << "," << fmt(s[k].rho);
        os << "\n";
    }
    return os.str();
}

std::string breakpoints_csv(const RhoConfig& cfg, const std::vector<BreakpointResult>& results)
{
    std::ostringstream os;
    os << "# experiment=breakpoints d=" << cfg.d << " m=" << cfg.m << " n_curves=" << cfg.n_curves
       << " grid_points=" << cfg.grid_points << " omega_grid=" << join(cfg.omega_grid) << " seed=" << cfg.seed
       << " rng=mt19937_64\n";
    os << "method,omega_bar,rho_at_min\n";
    for (const auto& r : results) os << to_string(r.method) << "," << fmt(r.omega_bar) << "," << fmt(r.rho_at_min) << "\n";
    return os.str();
}

std::string timing_csv(const TimingConfig& cfg, const std::vector<TimingRow>& rows)
{
    std::ostringstream os;
    os << "# experiment=timing d=" << cfg.d << " m=" << cfg.m << " n_curves=" << cfg.n_curves
       << " grid_points=" << cfg.grid_points << " repetitions=" << cfg.repetitions << " omegas=" << join(cfg.omegas)
       << " seed=" << cfg.seed << " rng=mt19937_64 auto_thresholds=" << fmt(cfg.thresholds.m1) << "/"
       << fmt(cfg.thresholds.m2) << " threads=1\n";
    os << "method,omega,median_seconds\n";
    for (const auto& r : rows) os << to_string(r.method) << "," << fmt(r.omega) << "," << fmt(r.seconds) << "\n";
    return os.str();
}

}  // namespace eph
