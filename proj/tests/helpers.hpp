#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "cntrx/dynamics.hpp"
#include "cntrx/quadrature.hpp"

namespace cntrx::test {

// Amplitude/phase of the last whole period of a trajectory by projection onto
// cos/sin at the drive frequency. Assumes the grid ends on a period boundary.
inline std::pair<double, double> tail_phasor(const Trajectory& traj, double omega,
                                             int steps_per_period) {
    const std::size_t n = traj.times.size();
    const auto count = static_cast<std::size_t>(steps_per_period) + 1;
    std::vector<double> c_vals(count), s_vals(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t k = n - count + i;
        c_vals[i] = traj.displacement[k] * std::cos(omega * traj.times[k]);
        s_vals[i] = traj.displacement[k] * std::sin(omega * traj.times[k]);
    }
    const double period = two_pi / omega;
    const double c = 2.0 / period * simpson_sampled(c_vals, traj.step);
    const double s = 2.0 / period * simpson_sampled(s_vals, traj.step);
    return {std::hypot(c, s), std::atan2(-s, c)};
}

}  // namespace cntrx::test
