#include "cntrx/verify.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "cntrx/quadrature.hpp"
#include "cntrx/rng.hpp"
#include "cntrx/runner.hpp"
#include "cntrx/stats.hpp"

namespace cntrx {

namespace {

// The normalized default parameter set used throughout the verification
// suite: unit mass/elasticity/charge/amplitude/current gain, viscosity 0.1,
// unit incoming frequency (deliberately resonant).
const CntParams kDefaults{1.0, 0.1, 1.0, 1.0, 0.0, 1.0};
constexpr double kAmplitude = 1.0;
constexpr double kOmega = 1.0;

double rel_gap(double reference, double value) {
    return std::abs(reference - value) / std::max(reference, 1e-12);
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(4);
    s << v;
    return s.str();
}

ScenarioConfig default_config() {
    ScenarioConfig c;
    c.params = kDefaults;
    c.amplitude = kAmplitude;
    c.angular_frequency = kOmega;
    return c;
}

std::string read_bytes(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

CriterionResult closed_form_vs_quadrature_no_carrier() {
    CriterionResult r{1, "no-carrier closed form vs quadrature", false, "", 0.0};
    const CarrierSpec carrier = constant_carrier(kOmega);
    double worst = 0.0;
    for (double eta : {-2.0, -1.0, 0.0, 0.5, 1.0}) {
        const ReferenceDesign ref{ReferenceKind::LinearCombination, eta};
        for (double delta : {std::numbers::pi / 4.0, std::numbers::pi / 2.0, std::numbers::pi,
                             1.5 * std::numbers::pi}) {
            const PhasePair pair{0.0, delta};
            const double cf = no_carrier_closed_form(kDefaults, pair, eta, kAmplitude, kOmega);
            const double quad =
                steady_state_distance(kDefaults, kAmplitude, kOmega, pair, ref, carrier);
            worst = std::max(worst, rel_gap(cf, quad));
        }
    }
    r.passed = worst < 1e-8;
    r.detail = "max_rel=" + fmt(worst) + " tol=1e-8";
    return r;
}

CriterionResult closed_form_vs_quadrature_no_reference() {
    CriterionResult r{2, "no-reference closed form vs quadrature", false, "", 0.0};
    const double lag2 = 2.0 * steady_state_phase(kDefaults, kOmega);
    const ReferenceDesign ref{ReferenceKind::None, 0.0};
    double worst = 0.0;
    for (double tm : {std::numbers::pi / 8.0, std::numbers::pi / 4.0, 3.0 * std::numbers::pi / 8.0}) {
        for (double tc : {lag2, lag2 + std::numbers::pi / 4.0, lag2 - std::numbers::pi / 4.0}) {
            const PhasePair pair{-tm, tm};
            const double cf = no_reference_closed_form(kDefaults, tm, tc, kAmplitude, kOmega);
            const double quad = steady_state_distance(kDefaults, kAmplitude, kOmega, pair, ref,
                                                      double_frequency_carrier(kOmega, tc));
            worst = std::max(worst, rel_gap(cf, quad));
        }
    }
    r.passed = worst < 1e-8;
    r.detail = "max_rel=" + fmt(worst) + " tol=1e-8";
    return r;
}

CriterionResult full_pipeline_agreement() {
    CriterionResult r{3, "full-pipeline agreement at s=200", false, "", 0.0};
    const SymbolDuration T = symbol_duration(kOmega, 200);
    const SimSettings settings{1000};

    const DesignChoice nc = optimal_no_carrier(kDefaults, kAmplitude, kOmega, 0.0);
    const double sim_nc = simulated_distance(kDefaults, kAmplitude, kOmega, nc.phases,
                                             nc.reference, nc.carrier, T, settings);
    const double rel_nc = rel_gap(nc.predicted_j, sim_nc);

    const DesignChoice nr = optimal_no_reference(kDefaults, kAmplitude, kOmega);
    const double sim_nr = simulated_distance(kDefaults, kAmplitude, kOmega, nr.phases,
                                             nr.reference, nr.carrier, T, settings);
    const double rel_nr = rel_gap(nr.predicted_j, sim_nr);

    r.passed = rel_nc < 1e-3 && rel_nr < 1e-3;
    r.detail = "no_carrier_rel=" + fmt(rel_nc) + " no_reference_rel=" + fmt(rel_nr) +
               " tol=1e-3";
    return r;
}

CriterionResult steady_state_envelope() {
    CriterionResult r{4, "steady-state approximation envelope", false, "", 0.0};
    const DesignChoice nc = optimal_no_carrier(kDefaults, kAmplitude, kOmega, 0.0);
    const SimSettings settings{1000};
    const double j_ss = steady_state_distance(kDefaults, kAmplitude, kOmega, nc.phases,
                                              nc.reference, nc.carrier);
    double gaps[3] = {};
    const int s_values[3] = {10, 50, 200};
    for (int i = 0; i < 3; ++i) {
        const SymbolDuration T = symbol_duration(kOmega, s_values[i]);
        const double sim = simulated_distance(kDefaults, kAmplitude, kOmega, nc.phases,
                                              nc.reference, nc.carrier, T, settings);
        gaps[i] = std::abs(sim - j_ss);
    }
    const bool decreasing = gaps[0] > gaps[1] && gaps[1] > gaps[2];
    const double final_rel = gaps[2] / j_ss;
    r.passed = decreasing && final_rel < 1e-3;
    r.detail = "gaps=" + fmt(gaps[0]) + "," + fmt(gaps[1]) + "," + fmt(gaps[2]) +
               " decreasing=" + (decreasing ? "yes" : "no") + " final_rel=" + fmt(final_rel) +
               " tol=1e-3";
    return r;
}

CriterionResult grid_search_optimality() {
    CriterionResult r{5, "grid-search optimality", false, "", 0.0};
    try {
        const OptimalityReport nc =
            verify_optimality(DesignVariant::NoCarrier, kDefaults, kAmplitude, kOmega, 0.0, 64);
        const OptimalityReport nr =
            verify_optimality(DesignVariant::NoReference, kDefaults, kAmplitude, kOmega, 0.0, 64);
        r.passed = nc.within_one_cell && nr.within_one_cell;
        r.detail = "no_carrier_argmax=" + fmt(nc.argmax_primary) + " no_reference_argmax=(" +
                   fmt(nr.argmax_primary) + "," + fmt(nr.argmax_secondary) + ")";
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = e.what();
    }
    return r;
}

CriterionResult carrier_constraint(std::uint64_t seed) {
    CriterionResult r{6, "carrier normalization and noise variance", false, "", 0.0};
    double worst_norm = 0.0;
    for (int s : {1, 4, 16}) {
        const SymbolDuration T = symbol_duration(kOmega, s);
        worst_norm = std::max(worst_norm, std::abs(carrier_norm(constant_carrier(kOmega), T) - 1.0));
        worst_norm = std::max(
            worst_norm, std::abs(carrier_norm(double_frequency_carrier(kOmega, 0.7), T) - 1.0));
    }

    // Variance of the path-realized integrated noise, both carriers.
    const SymbolDuration T = symbol_duration(kOmega, 4);
    const NoiseSpec noise{1.0, seed};
    const std::size_t draws = 10000;
    const std::size_t steps = 1024;
    const double target = 1.0 / T.duration;
    double worst_var = 0.0;
    for (const CarrierSpec& carrier :
         {constant_carrier(kOmega), double_frequency_carrier(kOmega, 0.7)}) {
        KahanSum sum, sum_sq;
        for (std::size_t i = 0; i < draws; ++i) {
            const double v = noise_sample_path(noise, carrier, T, steps, i);
            sum.add(v);
            sum_sq.add(v * v);
        }
        const double mean = sum.value() / static_cast<double>(draws);
        const double var = sum_sq.value() / static_cast<double>(draws) - mean * mean;
        worst_var = std::max(worst_var, std::abs(var / target - 1.0));
    }

    r.passed = worst_norm < 1e-9 && worst_var < 0.05;
    r.detail = "max_norm_err=" + fmt(worst_norm) + " max_var_err=" + fmt(worst_var) +
               " tols=1e-9,5%";
    return r;
}

CriterionResult degenerate_designs() {
    CriterionResult r{7, "degenerate designs yield zero distance", false, "", 0.0};
    const double lag2 = 2.0 * steady_state_phase(kDefaults, kOmega);
    double worst = 0.0;

    // Coinciding phases.
    worst = std::max(worst, steady_state_distance(
                                kDefaults, kAmplitude, kOmega, {0.7, 0.7},
                                {ReferenceKind::LinearCombination, 0.3}, constant_carrier(kOmega)));
    // eta = -1/2 with the constant carrier.
    worst = std::max(worst,
                     steady_state_distance(kDefaults, kAmplitude, kOmega,
                                           {0.0, std::numbers::pi},
                                           {ReferenceKind::LinearCombination, -0.5},
                                           constant_carrier(kOmega)));
    // Carrier phase a quarter turn off twice the lag.
    worst = std::max(worst, steady_state_distance(
                                kDefaults, kAmplitude, kOmega,
                                {-std::numbers::pi / 4.0, std::numbers::pi / 4.0},
                                {ReferenceKind::None, 0.0},
                                double_frequency_carrier(kOmega, lag2 + std::numbers::pi / 2.0)));
    // Zero phase in the no-reference design.
    worst = std::max(worst, steady_state_distance(kDefaults, kAmplitude, kOmega, {0.0, 0.0},
                                                  {ReferenceKind::None, 0.0},
                                                  double_frequency_carrier(kOmega, lag2)));

    r.passed = worst < 1e-10;
    r.detail = "max_J=" + fmt(worst) + " tol=1e-10";
    return r;
}

CriterionResult integrator_validity() {
    CriterionResult r{8, "integrator validity", false, "", 0.0};
    // Step-halving order check against the analytic steady state on the tail
    // of a long run (transient decayed well below the step error).
    const WaveSpec drive{kAmplitude, kOmega, 0.0};
    const SteadyStateResponse ss = steady_state_response(kDefaults, drive);
    const SymbolDuration T = symbol_duration(kOmega, 100);
    auto forcing = [&](double t) { return kDefaults.charge * eval_wave(drive, t); };

    auto tail_error = [&](int spp) {
        const double step = T.fundamental_period() / spp;
        const Trajectory traj = integrate_motion(kDefaults, forcing, T, step);
        double worst = 0.0;
        const std::size_t last_period = static_cast<std::size_t>(spp);
        for (std::size_t i = traj.times.size() - last_period; i < traj.times.size(); ++i)
            worst = std::max(worst, std::abs(traj.displacement[i] - ss.eval(traj.times[i])));
        return worst;
    };
    const double err_h = tail_error(1000);
    const double err_h2 = tail_error(2000);
    const double ratio = err_h / err_h2;

    // Linearity of the motion equation.
    const SymbolDuration T2 = symbol_duration(kOmega, 20);
    auto f1 = [&](double t) { return std::cos(t); };
    auto f2 = [&](double t) { return 0.5 * std::cos(t + 1.1); };
    auto fsum = [&](double t) { return f1(t) + f2(t); };
    const double step = T2.fundamental_period() / 1000;
    const Trajectory a = integrate_motion(kDefaults, f1, T2, step, 0.3, -0.2);
    const Trajectory b = integrate_motion(kDefaults, f2, T2, step, 0.0, 0.0);
    const Trajectory c = integrate_motion(kDefaults, fsum, T2, step, 0.3, -0.2);
    double lin_err = 0.0;
    for (std::size_t i = 0; i < c.times.size(); ++i) {
        lin_err = std::max(lin_err,
                           std::abs(c.displacement[i] - (a.displacement[i] + b.displacement[i])));
        lin_err = std::max(lin_err, std::abs(c.velocity[i] - (a.velocity[i] + b.velocity[i])));
    }

    r.passed = ratio >= 12.0 && ratio <= 20.0 && lin_err < 1e-9;
    r.detail = "halving_ratio=" + fmt(ratio) + " (need 12..20) linearity_err=" + fmt(lin_err) +
               " tol=1e-9";
    return r;
}

CriterionResult detection_and_ber(std::uint64_t seed, const std::filesystem::path& scratch) {
    CriterionResult r{9, "detection and BER", false, "", 0.0};
    std::filesystem::create_directories(scratch);

    const SymbolDuration T = symbol_duration(kOmega, 200);
    const SimSettings settings{1000};
    const DesignChoice nc = optimal_no_carrier(kDefaults, kAmplitude, kOmega, 0.0);
    const DecisionContext ctx = calibrate(kDefaults, kAmplitude, kOmega, nc.phases, nc.reference,
                                          nc.carrier, T, settings);
    const double distance = std::abs(ctx.d_plus_ref - ctx.d_minus_ref);

    // sigma = 0: every decision must be exact.
    std::size_t zero_errors = 0;
    for (std::size_t i = 0; i < 1000; ++i) {
        const bool plus = (counter_u64(seed, rng_stream::symbols, i) & 1u) == 0;
        const double d0 = plus ? ctx.d_plus_ref : ctx.d_minus_ref;
        if (detect_statistic(d0, ctx) != (plus ? Symbol::plus : Symbol::minus))
            ++zero_errors;
    }

    // Noise scaled so the decision margin is two standard deviations:
    // sigma_n = J/4, true error rate Q(2).
    ScenarioConfig c = default_config();
    c.seed = seed;
    c.trials = 100000;
    c.sigma_values = {distance * std::sqrt(T.duration) / 4.0};
    const std::vector<BerPoint> pts = run_ber(c, scratch / "ber_q2.csv");

    // Full auto-scaled sweep run twice must be byte-identical, manifest too.
    ScenarioConfig sweep = default_config();
    sweep.seed = seed;
    sweep.trials = 10000;
    const auto path_a = scratch / "ber_a.csv";
    const auto path_b = scratch / "ber_b.csv";
    run_ber(sweep, path_a);
    run_ber(sweep, path_b);
    const bool bytes_equal = read_bytes(path_a) == read_bytes(path_b) &&
                             read_bytes(path_a.string() + ".manifest") ==
                                 read_bytes(path_b.string() + ".manifest");

    const double q2 = gaussian_tail(2.0);
    const WilsonInterval w = wilson_interval(pts[0].errors, pts[0].trials);
    const bool q2_in = w.contains(q2);

    r.passed = zero_errors == 0 && q2_in && bytes_equal;
    r.detail = "zero_sigma_errors=" + std::to_string(zero_errors) + " ber=" + fmt(pts[0].ber) +
               " wilson=[" + fmt(w.low) + "," + fmt(w.high) + "] Q(2)=" + fmt(q2) +
               (q2_in ? " contained" : " NOT contained") +
               (bytes_equal ? " reruns_identical" : " reruns_DIFFER");
    return r;
}

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed, const std::filesystem::path& scratch) {
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    switch (id) {
        case 1: r = closed_form_vs_quadrature_no_carrier(); break;
        case 2: r = closed_form_vs_quadrature_no_reference(); break;
        case 3: r = full_pipeline_agreement(); break;
        case 4: r = steady_state_envelope(); break;
        case 5: r = grid_search_optimality(); break;
        case 6: r = carrier_constraint(seed); break;
        case 7: r = degenerate_designs(); break;
        case 8: r = integrator_validity(); break;
        case 9: r = detection_and_ber(seed, scratch); break;
        default: throw std::invalid_argument("criterion id must be in 1..9");
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    // Criteria 1, 2, 3, 5 and 9 carry wall-clock budgets; blowing one is a
    // failure. The rest are unbudgeted.
    const double inf = std::numeric_limits<double>::infinity();
    const double budgets[kCriterionCount] = {1.0, 1.0, 30.0, inf, 10.0, inf, inf, inf, 60.0};
    if (r.seconds >= budgets[id - 1]) {
        r.passed = false;
        r.detail += " OVER_BUDGET(" + fmt(budgets[id - 1]) + "s)";
    }
    return r;
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed,
                                            const std::filesystem::path& scratch) {
    std::vector<CriterionResult> out;
    out.reserve(kCriterionCount);
    for (int id = 1; id <= kCriterionCount; ++id)
        out.push_back(run_criterion(id, seed, scratch));
    return out;
}

std::string format_criterion_line(const CriterionResult& r) {
    std::ostringstream s;
    s << "[" << r.id << "/" << kCriterionCount << "] " << (r.passed ? "PASS" : "FAIL") << " "
      << r.name << "  " << r.detail << "  (";
    s.precision(2);
    s << std::fixed << r.seconds << " s)";
    return s.str();
}

}  // namespace cntrx
