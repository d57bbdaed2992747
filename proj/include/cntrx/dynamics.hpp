#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "cntrx/model.hpp"
#include "cntrx/signals.hpp"

namespace cntrx {

// The bounded particular solution of
//   m x'' + viscosity x' + elasticity x = charge * drive(t)
// for a sinusoidal drive. `phase` is the lag relative to the drive and lies in
// (-pi, 0] whenever viscosity > 0; the drive's own phase (with the sign of
// charge*amplitude folded in) is kept separately so the response can be
// evaluated directly:
//
//   x_ss(t) = amplitude * cos(drive_frequency * t + drive_phase + phase)
struct SteadyStateResponse {
    double amplitude = 0.0;        // >= 0
    double phase = 0.0;            // lag, two-argument arctangent branch
    double drive_frequency = 1.0;  // rad/s
    double drive_phase = 0.0;

    double eval(double t) const {
        return amplitude * std::cos(drive_frequency * t + drive_phase + phase);
    }
    double eval_velocity(double t) const {
        return -amplitude * drive_frequency *
               std::sin(drive_frequency * t + drive_phase + phase);
    }
    double total_phase() const { return drive_phase + phase; }
    Phasor as_phasor() const { return {amplitude, total_phase()}; }
};

// Rejects the undamped exact-resonance case (viscosity = 0 and
// elasticity = mass * w^2), where no bounded particular solution of this form
// exists. The lag is computed as atan2(-viscosity*w, elasticity - mass*w^2),
// which keeps the branch correct on both sides of resonance.
SteadyStateResponse steady_state_response(const CntParams& p, const WaveSpec& drive);

// Signed superposition of equal-frequency steady-state components.
struct SuperposedResponse {
    std::vector<std::pair<SteadyStateResponse, int>> terms;  // sign is +1 or -1
    double drive_frequency = 1.0;

    double eval(double t) const;
    // The same response collapsed to a single sinusoid by phasor addition.
    Phasor collapsed() const;
};

SuperposedResponse superpose(std::span<const std::pair<SteadyStateResponse, int>> responses);

// Uniformly sampled solution of the motion equation.
struct Trajectory {
    std::vector<double> times;
    std::vector<double> displacement;
    std::vector<double> velocity;
    double step = 0.0;
};

// Classical fixed-step RK4 from (x0, v0) over [0, T.duration]. The step must
// resolve the fundamental period with at least 200 steps and divide the total
// duration evenly; nonfinite forcing values are rejected.
Trajectory integrate_motion(const CntParams& p, const std::function<double(double)>& forcing,
                            const SymbolDuration& T, double step, double x0 = 0.0,
                            double v0 = 0.0);

// Envelope decay factor exp(-viscosity * duration / (2 mass)) of the
// homogeneous solution. Requires viscosity > 0 (and duration >= 0).
double transient_bound(const CntParams& p, double duration);
double transient_bound(const CntParams& p, const SymbolDuration& T);

}  // namespace cntrx
