#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cntrx/config.hpp"
#include "cntrx/design.hpp"

namespace cntrx {

// Resolve the configured design variant into a concrete DesignChoice
// (phases/carrier defaults filled in, overrides applied).
DesignChoice build_design(const ScenarioConfig& c);

struct SingleResult {
    DesignChoice design;
    PerformanceReport report;
    DemodResult demod_plus;
    DemodResult demod_minus;
    Symbol detected_plus = Symbol::plus;
    Symbol detected_minus = Symbol::minus;
};

// One full scenario: both hypotheses simulated, all distance routes computed,
// one noisy demodulation per hypothesis, detection against the calibrated
// references. Writes a quantity/value CSV plus a manifest; deterministic per
// (config, seed).
SingleResult run_single(const ScenarioConfig& c, const std::filesystem::path& out);

struct BerPoint {
    double sigma = 0.0;
    double sigma_n = 0.0;  // std dev of the integrated noise, sigma / sqrt(T_s)
    std::size_t trials = 0;
    std::size_t errors = 0;
    double ber = 0.0;
    double wilson_low = 0.0;
    double wilson_high = 0.0;
};

// Monte Carlo bit-error-rate campaign over a sigma sweep: equiprobable
// symbols, one noise draw per trial, nearest-reference detection. Requires
// trials >= 100 so the Wilson interval is meaningful.
std::vector<BerPoint> run_ber(const ScenarioConfig& c, const std::filesystem::path& out);

struct SweepResult {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// One row per grid point of the configured axis; see README for the column
// sets. Writes CSV plus manifest.
SweepResult run_sweep(const ScenarioConfig& c, const std::filesystem::path& out);

// Export a trajectory as t,x,v rows.
void write_trajectory_csv(const Trajectory& traj, const ScenarioConfig& c,
                          const std::filesystem::path& out);

}  // namespace cntrx
