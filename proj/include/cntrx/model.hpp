#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cntrx {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Wrap an angle into (-pi, pi].
inline double wrap_angle(double a) {
    double w = std::remainder(a, two_pi);
    if (w <= -std::numbers::pi)
        w += two_pi;
    return w;
}

// Distance between two angles on the circle, in [0, pi].
inline double angle_distance(double a, double b) {
    return std::abs(wrap_angle(a - b));
}

// Distance between angles identified modulo pi (for quantities that only
// matter up to a sign flip of the underlying sinusoid).
inline double angle_distance_mod_pi(double a, double b) {
    return std::abs(std::remainder(a - b, std::numbers::pi));
}

// Physical constants of the cantilever plus the current-map constants.
// All quantities may be read in SI or normalized units; nothing here converts.
struct CntParams {
    double mass = 1.0;            // kg
    double viscosity = 0.1;       // kg/s, >= 0
    double elasticity = 1.0;      // N/m
    double charge = 1.0;          // C
    double current_offset = 0.0;  // A, the constant term of the current map
    double current_gain = 1.0;    // A/m^2, coefficient of the x^2 term
};

// Returns p unchanged if all invariants hold, throws std::invalid_argument
// otherwise. Records returned from here never need re-validation downstream.
CntParams validate_params(const CntParams& p);

// A single sinusoid a*cos(w*t + phase).
struct WaveSpec {
    double amplitude = 1.0;
    double angular_frequency = 1.0;  // rad/s, > 0
    double phase = 0.0;              // rad
};

WaveSpec validate_wave(const WaveSpec& w);

// The two phases carrying one bit each.
struct PhasePair {
    double phase_plus = 0.0;
    double phase_minus = std::numbers::pi;

    // True when the two symbols coincide modulo 2*pi; such a pair is allowed
    // (degenerate cases are exercised by tests) but every operation that needs
    // distinguishable symbols rejects it.
    bool degenerate() const { return angle_distance(phase_plus, phase_minus) < 1e-12; }
};

// Symbol duration: an integer number of fundamental periods.
struct SymbolDuration {
    int period_count = 1;          // s >= 1
    double base_frequency = 1.0;   // rad/s the duration was built from
    double duration = two_pi;      // seconds, == 2*pi*period_count/base_frequency

    double fundamental_period() const { return two_pi / base_frequency; }
};

// T_s = (2*pi/omega_in) * s. Rejects s < 1 and omega_in <= 0.
SymbolDuration symbol_duration(double omega_in, int s);

}  // namespace cntrx
