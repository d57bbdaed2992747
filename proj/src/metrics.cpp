#include "cntrx/metrics.hpp"

#include <array>
#include <cmath>

#include "cntrx/quadrature.hpp"

namespace cntrx {

namespace {

constexpr std::size_t kPeriodNodes = 4096;

// Steady-state phasor of the response to a drive given as a phasor at omega.
Phasor response_phasor(const CntParams& p, double omega, const Phasor& drive) {
    if (drive.amplitude == 0.0) {
        // steady_state_response validates a positive-amplitude wave; the zero
        // drive trivially has the zero response.
        validate_params(p);
        return {0.0, 0.0};
    }
    return steady_state_response(p, {drive.amplitude, omega, drive.phase}).as_phasor();
}

void check_carrier_frequency(const CarrierSpec& carrier, double omega_in) {
    if (std::abs(carrier.base_frequency - omega_in) > 1e-12 * std::max(1.0, omega_in))
        throw std::invalid_argument("carrier base frequency does not match the incoming wave");
}

}  // namespace

double magnitude_coefficient(const CntParams& p, double amplitude, double omega_in) {
    return steady_state_response(p, {amplitude, omega_in, 0.0}).amplitude;
}

double steady_state_phase(const CntParams& p, double omega_in) {
    return steady_state_response(p, {1.0, omega_in, 0.0}).phase;
}

double simulated_distance(const CntParams& p, double amplitude, double omega_in,
                          const PhasePair& pair, const ReferenceDesign& ref,
                          const CarrierSpec& carrier, const SymbolDuration& T,
                          const SimSettings& settings) {
    check_carrier_frequency(carrier, omega_in);
    const double d_plus =
        noiseless_statistic(p, amplitude, omega_in, pair, ref, carrier, T, settings, Symbol::plus);
    const double d_minus = noiseless_statistic(p, amplitude, omega_in, pair, ref, carrier, T,
                                               settings, Symbol::minus);
    return std::abs(d_plus - d_minus);
}

double steady_state_distance(const CntParams& p, double amplitude, double omega_in,
                             const PhasePair& pair, const ReferenceDesign& ref,
                             const CarrierSpec& carrier) {
    check_carrier_frequency(carrier, omega_in);
    const Phasor ref_ph = reference_phasor(ref, pair, amplitude);
    const Phasor neg_ref{-ref_ph.amplitude, ref_ph.phase};

    auto hypothesis_response = [&](double phase) {
        const std::array<Phasor, 2> drive = {make_phasor(amplitude, phase),
                                             make_phasor(neg_ref.amplitude, neg_ref.phase)};
        return response_phasor(p, omega_in, phasor_sum(drive));
    };
    const Phasor xp = hypothesis_response(pair.phase_plus);
    const Phasor xm = hypothesis_response(pair.phase_minus);

    const double period = two_pi / omega_in;
    const double integral = simpson(
        [&](double t) {
            const double a = eval_phasor(xp, omega_in, t);
            const double b = eval_phasor(xm, omega_in, t);
            return (a + b) * (a - b) * eval_carrier(carrier, t);
        },
        0.0, period, kPeriodNodes);
    return std::abs(p.current_gain * integral / period);
}

double steady_state_distance_grouped(const CntParams& p, double amplitude, double omega_in,
                                     const PhasePair& pair, const ReferenceDesign& ref,
                                     const CarrierSpec& carrier) {
    check_carrier_frequency(carrier, omega_in);
    const Phasor x_minus = response_phasor(p, omega_in, make_phasor(amplitude, pair.phase_minus));
    const Phasor x_ref = response_phasor(p, omega_in, reference_phasor(ref, pair, amplitude));
    const std::array<Phasor, 2> diff_drive = {
        make_phasor(amplitude, pair.phase_plus),
        make_phasor(-amplitude, pair.phase_minus),
    };
    const Phasor x_diff = response_phasor(p, omega_in, phasor_sum(diff_drive));

    const double period = two_pi / omega_in;
    const double integral = simpson(
        [&](double t) {
            const double d = eval_phasor(x_diff, omega_in, t);
            const double lead = 2.0 * eval_phasor(x_minus, omega_in, t) -
                                2.0 * eval_phasor(x_ref, omega_in, t) + d;
            return lead * d * eval_carrier(carrier, t);
        },
        0.0, period, kPeriodNodes);
    return std::abs(p.current_gain * integral / period);
}

double no_carrier_closed_form(const CntParams& p, const PhasePair& pair, double eta,
                              double amplitude, double omega_in) {
    const double mag = magnitude_coefficient(p, amplitude, omega_in);
    return std::abs(p.current_gain * mag * mag * (2.0 * eta + 1.0)) *
           (1.0 - std::cos(pair.phase_minus - pair.phase_plus));
}

double no_reference_closed_form(const CntParams& p, double phase_minus, double carrier_phase,
                                double amplitude, double omega_in) {
    const double mag = magnitude_coefficient(p, amplitude, omega_in);
    const double lag = steady_state_phase(p, omega_in);
    return std::abs(p.current_gain * mag * mag * std::sin(2.0 * phase_minus) *
                    std::cos(carrier_phase - 2.0 * lag)) /
           std::numbers::sqrt2;
}

std::optional<double> try_closed_form_distance(const CntParams& p, const PhasePair& pair,
                                               const ReferenceDesign& ref,
                                               const CarrierSpec& carrier, double amplitude,
                                               double omega_in) {
    if (carrier.kind == CarrierKind::ConstantOne && ref.kind == ReferenceKind::LinearCombination)
        return no_carrier_closed_form(p, pair, ref.eta, amplitude, omega_in);
    if (carrier.kind == CarrierKind::DoubleFrequencySine && ref.kind == ReferenceKind::None &&
        angle_distance(pair.phase_plus, -pair.phase_minus) < 1e-9)
        return no_reference_closed_form(p, pair.phase_minus, carrier.carrier_phase, amplitude,
                                        omega_in);
    return std::nullopt;
}

double closed_form_distance(const CntParams& p, const PhasePair& pair,
                            const ReferenceDesign& ref, const CarrierSpec& carrier,
                            double amplitude, double omega_in) {
    const auto value = try_closed_form_distance(p, pair, ref, carrier, amplitude, omega_in);
    if (!value)
        throw std::invalid_argument(
            "no closed form applies: need either {constant carrier, linear-combination "
            "reference} or {double-frequency carrier, zero reference, antisymmetric phases}");
    return *value;
}

PerformanceReport compute_report(const CntParams& p, double amplitude, double omega_in,
                                 const PhasePair& pair, const ReferenceDesign& ref,
                                 const CarrierSpec& carrier, const SymbolDuration& T,
                                 const SimSettings& settings) {
    PerformanceReport rep;
    rep.simulated = simulated_distance(p, amplitude, omega_in, pair, ref, carrier, T, settings);
    rep.steady_state = steady_state_distance(p, amplitude, omega_in, pair, ref, carrier);
    rep.closed_form = try_closed_form_distance(p, pair, ref, carrier, amplitude, omega_in);
    rep.magnitude_coefficient = magnitude_coefficient(p, amplitude, omega_in);
    rep.steady_state_phase = steady_state_phase(p, omega_in);
    return rep;
}

}  // namespace cntrx
