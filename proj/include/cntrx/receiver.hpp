#pragma once

#include <cstdint>
#include <functional>

#include "cntrx/dynamics.hpp"
#include "cntrx/model.hpp"
#include "cntrx/signals.hpp"

namespace cntrx {

// Additive noise entering the demodulator integral. sigma is the
// continuous-time white-noise scale: the integrated correlator noise n_e has
// variance sigma^2 / T_s for any carrier meeting the normalization constraint.
struct NoiseSpec {
    double sigma = 0.0;  // >= 0; sigma = 0 makes the statistic exactly noiseless
    std::uint64_t seed = 0;
};

enum class Symbol { plus, minus };

inline const char* to_string(Symbol s) { return s == Symbol::plus ? "plus" : "minus"; }

struct DemodResult {
    double statistic_noiseless = 0.0;  // D0
    double noise_sample = 0.0;         // n_e
    double statistic = 0.0;            // D = D0 + n_e, exactly
    SymbolDuration duration;
};

// Calibrated noiseless statistics for the two hypotheses. ordering_known
// records the receiver's assumption that it knows which reference is which.
struct DecisionContext {
    bool ordering_known = true;
    double d_plus_ref = 0.0;
    double d_minus_ref = 0.0;
};

DecisionContext make_decision_context(double d_plus_ref, double d_minus_ref);

// I(x) = current_offset + current_gain * x^2.
inline double emission_current(const CntParams& p, double x) {
    return p.current_offset + p.current_gain * x * x;
}

// One draw of n_e ~ N(0, sigma^2 / T_s), deterministic per (seed, index).
// The carrier does not enter: for any carrier meeting the normalization
// constraint the integrated noise has this distribution — which is exactly
// what the constraint is for.
double noise_sample(const NoiseSpec& noise, const CarrierSpec& c, const SymbolDuration& T,
                    std::uint64_t index = 0);

// Path-based realization used to validate the variance law: independent
// Gaussian increments per grid step, correlated into the integral with the
// carrier weighting. Distribution matches noise_sample when the carrier
// satisfies the constraint.
double noise_sample_path(const NoiseSpec& noise, const CarrierSpec& c, const SymbolDuration& T,
                         std::size_t steps, std::uint64_t index = 0);

// D = (1/T_s) * integral of (I(x(t)) + e(t)) f_c(t), with the noiseless part
// computed by Simpson quadrature on the trajectory grid (3/8 tail for odd
// interval counts) and the noise realized as a single calibrated draw.
DemodResult demodulate(const CntParams& p, const Trajectory& traj, const CarrierSpec& c,
                       const SymbolDuration& T, const NoiseSpec& noise,
                       std::uint64_t draw_index = 0);

// Nearest-reference rule; exact midpoint ties resolve to plus.
Symbol detect(const DemodResult& d, const DecisionContext& ctx);
Symbol detect_statistic(double statistic, const DecisionContext& ctx);

struct SimSettings {
    int steps_per_period = 1000;
};

// Forcing term charge * (E_in(t) - E_r(t)) for one transmitted symbol.
std::function<double(double)> make_forcing(const CntParams& p, double amplitude, double omega_in,
                                           const PhasePair& pair, const ReferenceDesign& ref,
                                           Symbol sym);

// Full noiseless pipeline for one symbol: integrate the motion equation from
// rest, map displacement to current, demodulate. Returns D0.
double noiseless_statistic(const CntParams& p, double amplitude, double omega_in,
                           const PhasePair& pair, const ReferenceDesign& ref,
                           const CarrierSpec& carrier, const SymbolDuration& T,
                           const SimSettings& settings, Symbol sym);

// Runs the noiseless pipeline for both hypotheses and records the references.
// Rejects designs whose statistics are indistinguishable.
DecisionContext calibrate(const CntParams& p, double amplitude, double omega_in,
                          const PhasePair& pair, const ReferenceDesign& ref,
                          const CarrierSpec& carrier, const SymbolDuration& T,
                          const SimSettings& settings);

}  // namespace cntrx
