#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cntrx/model.hpp"
#include "cntrx/receiver.hpp"

namespace cntrx {

enum class NoiseModel { Direct, Path };
enum class SweepAxis { DeltaTheta, ThetaMinus, ThetaC, Eta, Periods, Sigma };

const char* to_string(NoiseModel m);
const char* to_string(SweepAxis a);

// Everything a run needs, resolved from an INI-style config file with flat
// named sections. Unknown keys are errors; missing keys take the defaults
// below (which are also what an empty file yields).
struct ScenarioConfig {
    // [model]
    CntParams params;

    // [incoming]
    double amplitude = 1.0;
    double angular_frequency = 1.0;

    // [design]
    std::string variant = "no_carrier";  // or "no_reference"
    double eta = 0.0;
    bool has_carrier_phase = false;  // default: locked to twice the steady-state lag
    double carrier_phase = 0.0;
    bool has_phase_plus = false;
    double phase_plus = 0.0;
    bool has_phase_minus = false;
    double phase_minus = 0.0;

    // [noise]
    double sigma = 0.0;
    NoiseModel noise_model = NoiseModel::Direct;
    int path_steps_per_period = 256;

    // [run]
    int periods = 200;
    int steps_per_period = 1000;
    int trials = 1000;
    std::vector<double> sigma_values;  // empty = auto scale from the calibrated distance
    SweepAxis axis = SweepAxis::DeltaTheta;
    int points = 64;
    double eta_min = -2.0;
    double eta_max = 1.0;
    std::vector<int> s_values = {10, 50, 200};
    bool with_numeric = false;
    std::string trajectory_out;

    std::uint64_t seed = 0;  // from --seed, recorded here so output can echo it

    // Canonical INI rendering of the fully resolved configuration, used for
    // the run manifest and the CSV comment line.
    std::string resolved_ini() const;
    std::string summary_line() const;
};

// Parse and validate. Errors carry "<name>:<line>: ..." diagnostics naming the
// offending section/key.
ScenarioConfig parse_config_text(const std::string& text, const std::string& name);
ScenarioConfig load_config(const std::filesystem::path& path);

}  // namespace cntrx
