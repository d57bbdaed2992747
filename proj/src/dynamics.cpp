#include "cntrx/dynamics.hpp"

#include <cmath>

namespace cntrx {

SteadyStateResponse steady_state_response(const CntParams& p, const WaveSpec& drive) {
    validate_params(p);
    validate_wave(drive);
    const double w = drive.angular_frequency;
    const double stiffness_term = p.elasticity - p.mass * w * w;
    const double damping_term = p.viscosity * w;
    if (stiffness_term == 0.0 && damping_term == 0.0)
        throw std::invalid_argument(
            "undamped exact resonance: no bounded steady-state response "
            "(viscosity = 0 and elasticity = mass * omega^2)");

    const double denom = std::hypot(stiffness_term, damping_term);
    const double force = p.charge * drive.amplitude;

    SteadyStateResponse r;
    r.drive_frequency = w;
    r.amplitude = std::abs(force) / denom;
    r.drive_phase = force < 0.0 ? wrap_angle(drive.phase + std::numbers::pi) : drive.phase;
    r.phase = std::atan2(-damping_term, stiffness_term);
    return r;
}

double SuperposedResponse::eval(double t) const {
    double sum = 0.0;
    for (const auto& [r, sign] : terms)
        sum += static_cast<double>(sign) * r.eval(t);
    return sum;
}

Phasor SuperposedResponse::collapsed() const {
    std::vector<Phasor> phasors;
    phasors.reserve(terms.size());
    for (const auto& [r, sign] : terms)
        phasors.push_back(make_phasor(static_cast<double>(sign) * r.amplitude, r.total_phase()));
    return phasor_sum(phasors);
}

SuperposedResponse superpose(std::span<const std::pair<SteadyStateResponse, int>> responses) {
    SuperposedResponse out;
    if (responses.empty())
        return out;
    out.drive_frequency = responses.front().first.drive_frequency;
    for (const auto& [r, sign] : responses) {
        if (sign != 1 && sign != -1)
            throw std::invalid_argument("superpose: sign must be +1 or -1");
        if (r.drive_frequency != out.drive_frequency)
            throw std::invalid_argument("superpose: mixed drive frequencies");
        out.terms.emplace_back(r, sign);
    }
    return out;
}

Trajectory integrate_motion(const CntParams& p, const std::function<double(double)>& forcing,
                            const SymbolDuration& T, double step, double x0, double v0) {
    validate_params(p);
    if (!(step > 0.0))
        throw std::invalid_argument("integrate_motion: step must be positive");
    const double period = T.fundamental_period();
    if (period / step < 200.0 * (1.0 - 1e-12))
        throw std::invalid_argument(
            "integrate_motion: step too coarse, need at least 200 steps per fundamental period");
    const double steps_exact = T.duration / step;
    const auto n = static_cast<std::size_t>(std::llround(steps_exact));
    if (n < 1 || std::abs(steps_exact - static_cast<double>(n)) > 1e-6)
        throw std::invalid_argument("integrate_motion: step must divide the symbol duration");

    const double inv_m = 1.0 / p.mass;
    auto accel = [&](double f, double x, double v) {
        return (f - p.viscosity * v - p.elasticity * x) * inv_m;
    };

    Trajectory traj;
    traj.step = step;
    traj.times.resize(n + 1);
    traj.displacement.resize(n + 1);
    traj.velocity.resize(n + 1);
    traj.times[0] = 0.0;
    traj.displacement[0] = x0;
    traj.velocity[0] = v0;

    double x = x0;
    double v = v0;
    const double h = step;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * h;
        const double f0 = forcing(t);
        const double fm = forcing(t + 0.5 * h);
        const double f1 = forcing(t + h);
        if (!std::isfinite(f0) || !std::isfinite(fm) || !std::isfinite(f1))
            throw std::runtime_error("integrate_motion: forcing returned a nonfinite value");

        const double k1x = v;
        const double k1v = accel(f0, x, v);
        const double k2x = v + 0.5 * h * k1v;
        const double k2v = accel(fm, x + 0.5 * h * k1x, v + 0.5 * h * k1v);
        const double k3x = v + 0.5 * h * k2v;
        const double k3v = accel(fm, x + 0.5 * h * k2x, v + 0.5 * h * k2v);
        const double k4x = v + h * k3v;
        const double k4v = accel(f1, x + h * k3x, v + h * k3v);

        x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);

        traj.times[i + 1] = static_cast<double>(i + 1) * h;
        traj.displacement[i + 1] = x;
        traj.velocity[i + 1] = v;
    }
    return traj;
}

double transient_bound(const CntParams& p, double duration) {
    validate_params(p);
    if (!(p.viscosity > 0.0))
        throw std::invalid_argument("transient_bound: requires positive viscosity");
    if (!(duration >= 0.0))
        throw std::invalid_argument("transient_bound: duration must be nonnegative");
    return std::exp(-p.viscosity * duration / (2.0 * p.mass));
}

double transient_bound(const CntParams& p, const SymbolDuration& T) {
    return transient_bound(p, T.duration);
}

}  // namespace cntrx
