#pragma once

#include <string>
#include <vector>

#include "cntrx/metrics.hpp"

namespace cntrx {

// The two simplified receiver structures: drop the carrier (constant-one
// correlator, linear-combination reference) or drop the reference wave
// (double-frequency carrier, antisymmetric phases).
enum class DesignVariant { NoCarrier, NoReference };

const char* to_string(DesignVariant v);

struct DesignChoice {
    DesignVariant variant = DesignVariant::NoCarrier;
    ReferenceDesign reference;
    CarrierSpec carrier;
    PhasePair phases;
    double predicted_j = 0.0;  // closed-form value at this configuration
};

// Phase-difference-of-pi configuration maximizing the no-carrier closed form.
// eta stays a free input (the closed form grows without bound in |2 eta + 1|);
// eta = -1/2 is rejected since it annihilates the distance.
DesignChoice optimal_no_carrier(const CntParams& p, double amplitude, double omega_in,
                                double eta);

// Antisymmetric pi/4 phases with the carrier phase locked to twice the
// steady-state lag, maximizing the no-reference closed form.
DesignChoice optimal_no_reference(const CntParams& p, double amplitude, double omega_in);

struct SweepSample {
    double primary = 0.0;    // delta-theta (NoCarrier) or theta- (NoReference)
    double secondary = 0.0;  // carrier phase (NoReference only)
    double value = 0.0;
};

struct OptimalityReport {
    DesignVariant variant = DesignVariant::NoCarrier;
    int resolution = 0;
    bool flat_objective = false;   // every grid value ~ 0 (degenerate design)
    bool within_one_cell = false;
    double grid_max = 0.0;
    double predicted = 0.0;
    double argmax_primary = 0.0;
    double argmax_secondary = 0.0;
    double expected_primary = 0.0;
    double expected_secondary = 0.0;
    double cell_primary = 0.0;
    double cell_secondary = 0.0;
    std::vector<SweepSample> samples;
};

// Sweeps the free angles of the chosen variant on a uniform grid (resolution
// points per angle, at least 32), evaluating the steady-state distance, and
// checks that the argmax lands within one grid cell of the closed-form
// maximizer. Throws with a diagnostic if it does not; a degenerate flat
// objective is reported via the flag instead.
OptimalityReport verify_optimality(DesignVariant variant, const CntParams& p, double amplitude,
                                   double omega_in, double eta, int resolution);

}  // namespace cntrx
