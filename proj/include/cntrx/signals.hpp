#pragma once

#include <span>

#include "cntrx/model.hpp"

namespace cntrx {

// A sinusoid at an implied common frequency, amplitude * cos(w t + phase).
// Canonical form keeps amplitude >= 0 (signs are folded into the phase).
struct Phasor {
    double amplitude = 0.0;
    double phase = 0.0;
};

// Canonicalize: negative amplitudes become a pi phase shift.
Phasor make_phasor(double amplitude, double phase);

// Sum of equal-frequency sinusoids as a single sinusoid, resolved with the
// two-argument arctangent. A zero sum has amplitude 0 and phase 0.
Phasor phasor_sum(std::span<const Phasor> terms);

inline double eval_phasor(const Phasor& p, double omega, double t) {
    return p.amplitude * std::cos(omega * t + p.phase);
}

// The demodulator's multiplying signal. ConstantOne is exactly 1 for all t;
// DoubleFrequencySine is sqrt(2) sin(2 w t + carrier_phase), normalized so its
// mean square over whole periods is 1.
enum class CarrierKind { ConstantOne, DoubleFrequencySine };

struct CarrierSpec {
    CarrierKind kind = CarrierKind::ConstantOne;
    double carrier_phase = 0.0;   // used only by DoubleFrequencySine
    double base_frequency = 1.0;  // rad/s, the incoming wave's frequency
};

CarrierSpec constant_carrier(double omega_in);
CarrierSpec double_frequency_carrier(double omega_in, double carrier_phase);

// Reference wave design. None is the zero wave; LinearCombination is
// -eta * E_in_plus(t) + (1 + eta) * E_in_minus(t), a single sinusoid at the
// incoming frequency.
enum class ReferenceKind { None, LinearCombination };

struct ReferenceDesign {
    ReferenceKind kind = ReferenceKind::None;
    double eta = 0.0;  // used only by LinearCombination
};

double eval_wave(const WaveSpec& w, double t);

// carrier_wave supplies the incoming amplitude and frequency; pair supplies
// the two hypothesis phases.
double eval_reference(const ReferenceDesign& d, const PhasePair& pair,
                      const WaveSpec& carrier_wave, double t);

double eval_carrier(const CarrierSpec& c, double t);

// The reference wave collapsed to a single sinusoid at the incoming frequency.
Phasor reference_phasor(const ReferenceDesign& d, const PhasePair& pair, double amplitude);

// (1/T_s) * integral of f_c(t)^2 over [0, T_s], by composite Simpson with
// 4096 intervals per fundamental period. For both designed carriers this is 1
// over whole-period durations.
double carrier_norm(const CarrierSpec& c, const SymbolDuration& T);

}  // namespace cntrx
