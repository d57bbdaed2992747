#include "cntrx/signals.hpp"

#include <cmath>

#include "cntrx/quadrature.hpp"

namespace cntrx {

Phasor make_phasor(double amplitude, double phase) {
    if (amplitude < 0.0)
        return {-amplitude, wrap_angle(phase + std::numbers::pi)};
    return {amplitude, phase};
}

Phasor phasor_sum(std::span<const Phasor> terms) {
    double re = 0.0;
    double im = 0.0;
    for (const Phasor& p : terms) {
        re += p.amplitude * std::cos(p.phase);
        im += p.amplitude * std::sin(p.phase);
    }
    const double amp = std::hypot(re, im);
    if (amp == 0.0)
        return {0.0, 0.0};
    return {amp, std::atan2(im, re)};
}

CarrierSpec constant_carrier(double omega_in) {
    if (!(omega_in > 0.0))
        throw std::invalid_argument("carrier base frequency must be positive");
    return {CarrierKind::ConstantOne, 0.0, omega_in};
}

CarrierSpec double_frequency_carrier(double omega_in, double carrier_phase) {
    if (!(omega_in > 0.0))
        throw std::invalid_argument("carrier base frequency must be positive");
    return {CarrierKind::DoubleFrequencySine, carrier_phase, omega_in};
}

double eval_wave(const WaveSpec& w, double t) {
    return w.amplitude * std::cos(w.angular_frequency * t + w.phase);
}

double eval_reference(const ReferenceDesign& d, const PhasePair& pair,
                      const WaveSpec& carrier_wave, double t) {
    if (d.kind == ReferenceKind::None)
        return 0.0;
    const double a = carrier_wave.amplitude;
    const double w = carrier_wave.angular_frequency;
    return -d.eta * a * std::cos(w * t + pair.phase_plus) +
           (1.0 + d.eta) * a * std::cos(w * t + pair.phase_minus);
}

double eval_carrier(const CarrierSpec& c, double t) {
    if (c.kind == CarrierKind::ConstantOne)
        return 1.0;
    return std::numbers::sqrt2 * std::sin(2.0 * c.base_frequency * t + c.carrier_phase);
}

Phasor reference_phasor(const ReferenceDesign& d, const PhasePair& pair, double amplitude) {
    if (d.kind == ReferenceKind::None)
        return {0.0, 0.0};
    const Phasor terms[2] = {
        make_phasor(-d.eta * amplitude, pair.phase_plus),
        make_phasor((1.0 + d.eta) * amplitude, pair.phase_minus),
    };
    return phasor_sum(terms);
}

double carrier_norm(const CarrierSpec& c, const SymbolDuration& T) {
    const std::size_t n = 4096 * static_cast<std::size_t>(T.period_count);
    const double integral = simpson(
        [&](double t) {
            const double f = eval_carrier(c, t);
            return f * f;
        },
        0.0, T.duration, n);
    return integral / T.duration;
}

}  // namespace cntrx
