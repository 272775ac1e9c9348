#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "eph/eval.hpp"

namespace eph {

struct RhoConfig {
    int d = 3;
    int m = 1;
    int n_curves = 100;
    int grid_points = 501;
    std::vector<double> omega_grid = default_omega_grid();
    std::uint64_t seed = 1;
    int threads = 0;  // 0: hardware concurrency
    // The breakpoints characterize the closed forms in double arithmetic.
    StableVariant variant = StableVariant::Verbatim;

    void validate() const;

    // n equispaced values in (0, hi]
    static std::vector<double> default_omega_grid(int n = 500, double hi = 2.0);
};

struct RhoPoint {
    double omega;
    double rho;
};

// Basis mode each method uses when measured against the Taylor reference:
// Direct evaluates the naive closed forms, the others their stable forms.
EvalMode rho_mode(EvalMethod method);

// Control polygons with coordinates uniform in (0,1)^d, z = 0 when d = 2.
std::vector<std::vector<Vec3>> random_polygons(std::mt19937_64& rng, int n, int d, int m);

std::vector<RhoPoint> rho(const RhoConfig& cfg, EvalMethod method);

struct BreakpointResult {
    EvalMethod method = EvalMethod::NewProposal;
    double omega_bar = 0.0;
    double rho_at_min = 0.0;
};

BreakpointResult argmin_rho(EvalMethod method, const std::vector<RhoPoint>& series);
BreakpointResult find_omega_bar(const RhoConfig& cfg, EvalMethod method);

struct TimingConfig {
    int d = 3;
    int m = 1;
    std::vector<double> omegas = default_timing_omegas();
    int n_curves = 1000;
    int grid_points = 501;
    int repetitions = 5;
    std::uint64_t seed = 1;
    // One Auto policy for every method, so the table compares algorithms.
    AutoThresholds thresholds{};

    void validate() const;

    // 0.096 + 2^k, k = -10..10
    static std::vector<double> default_timing_omegas();
};

struct TimingRow {
    EvalMethod method;
    double omega;
    double seconds;  // median over repetitions
};

std::vector<TimingRow> time_methods(const TimingConfig& cfg, const std::vector<EvalMethod>& methods);
double total_seconds(const std::vector<TimingRow>& rows, EvalMethod method);

// CSV writers; the leading '#' lines echo the configuration.
std::string rho_csv(const RhoConfig& cfg, const std::vector<EvalMethod>& methods,
                    const std::vector<std::vector<RhoPoint>>& series);
std::string breakpoints_csv(const RhoConfig& cfg, const std::vector<BreakpointResult>& results);
std::string timing_csv(const TimingConfig& cfg, const std::vector<TimingRow>& rows);

}  // namespace eph
