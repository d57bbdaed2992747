#pragma once

#include <optional>

#include "cntrx/receiver.hpp"

namespace cntrx {

// Steady-state response amplitude for a unit-phase incoming wave:
//   charge * amplitude / sqrt((elasticity - mass w^2)^2 + (viscosity w)^2).
double magnitude_coefficient(const CntParams& p, double amplitude, double omega_in);

// Steady-state lag, two-argument arctangent branch in (-pi, 0] for positive
// viscosity (and 0 / -pi on the two sides of resonance when viscosity = 0).
double steady_state_phase(const CntParams& p, double omega_in);

// Constellation distance |D0+ - D0-| from two full noiseless pipeline runs
// (motion equation from rest, current map, demodulation).
double simulated_distance(const CntParams& p, double amplitude, double omega_in,
                          const PhasePair& pair, const ReferenceDesign& ref,
                          const CarrierSpec& carrier, const SymbolDuration& T,
                          const SimSettings& settings);

// Steady-state constellation distance
//   | (I1 / T1) * integral over one period of (x+ + x-)(x+ - x-) f_c |
// with the steady-state components built analytically by phasor addition; no
// time-domain integration is involved.
double steady_state_distance(const CntParams& p, double amplitude, double omega_in,
                             const PhasePair& pair, const ReferenceDesign& ref,
                             const CarrierSpec& carrier);

// Same quantity through the alternative grouping
//   (2 x_{E-} - 2 x_{Er} + x_{E+ - E-}) * x_{E+ - E-} * f_c,
// kept as an independent route for cross-validation.
double steady_state_distance_grouped(const CntParams& p, double amplitude, double omega_in,
                                     const PhasePair& pair, const ReferenceDesign& ref,
                                     const CarrierSpec& carrier);

// Closed form for the no-carrier design (f_c = 1, reference a linear
// combination of the two hypotheses):
//   |I1 * Atilde^2 * (2 eta + 1)| * (1 - cos(theta- - theta+)).
// Caller is responsible for applicability; see closed_form_distance.
double no_carrier_closed_form(const CntParams& p, const PhasePair& pair, double eta,
                              double amplitude, double omega_in);

// Closed form for the no-reference design (E_r = 0, double-frequency carrier,
// antisymmetric phases):
//   |I1 * Atilde^2 * sin(2 theta-) * cos(theta_c - 2 theta_ss)| / sqrt(2).
double no_reference_closed_form(const CntParams& p, double phase_minus, double carrier_phase,
                                double amplitude, double omega_in);

// Checked entry point: picks the closed form whose hypotheses the given
// design satisfies and throws when neither applies, so a formula can
// not be applied outside its hypotheses by accident.
double closed_form_distance(const CntParams& p, const PhasePair& pair,
                            const ReferenceDesign& ref, const CarrierSpec& carrier,
                            double amplitude, double omega_in);

// As above but returns nullopt instead of throwing.
std::optional<double> try_closed_form_distance(const CntParams& p, const PhasePair& pair,
                                               const ReferenceDesign& ref,
                                               const CarrierSpec& carrier, double amplitude,
                                               double omega_in);

// All routes side by side for one design.
struct PerformanceReport {
    double simulated = 0.0;                 // full-pipeline |D0+ - D0-|
    double steady_state = 0.0;              // one-period quadrature
    std::optional<double> closed_form;      // when one of the two designs applies
    double magnitude_coefficient = 0.0;
    double steady_state_phase = 0.0;
};

PerformanceReport compute_report(const CntParams& p, double amplitude, double omega_in,
                                 const PhasePair& pair, const ReferenceDesign& ref,
                                 const CarrierSpec& carrier, const SymbolDuration& T,
                                 const SimSettings& settings);

}  // namespace cntrx
