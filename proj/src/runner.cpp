#include "cntrx/runner.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cntrx/csv.hpp"
#include "cntrx/rng.hpp"
#include "cntrx/stats.hpp"

namespace cntrx {

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open output file: " + path.string());
    out << content;
    out.flush();
    if (!out)
        throw IoError("failed writing output file: " + path.string());
}

void write_manifest(const std::filesystem::path& out, const ScenarioConfig& c,
                    const std::string& command) {
    // Content depends only on (command, seed, config) so reruns are
    // byte-identical wherever the output lands.
    std::ostringstream m;
    m << "# cntrx run manifest\n";
    m << "command = " << command << "\n";
    m << "seed = " << format_u64(c.seed) << "\n";
    m << c.resolved_ini();
    write_file(out.string() + ".manifest", m.str());
}

std::string comment_line(const ScenarioConfig& c, const std::string& command) {
    return "# cntrx " + command + " " + c.summary_line() + "\n";
}

// One integrated-noise draw honoring the configured realization model.
double draw_noise(const ScenarioConfig& c, double sigma, const CarrierSpec& carrier,
                  const SymbolDuration& T, std::uint64_t index) {
    const NoiseSpec noise{sigma, c.seed};
    if (c.noise_model == NoiseModel::Path)
        return noise_sample_path(noise, carrier, T,
                                 static_cast<std::size_t>(c.path_steps_per_period) *
                                     static_cast<std::size_t>(T.period_count),
                                 index);
    return noise_sample(noise, carrier, T, index);
}

DemodResult apply_noise(DemodResult r, double sample) {
    r.noise_sample = sample;
    r.statistic = r.statistic_noiseless + sample;
    return r;
}

}  // namespace

DesignChoice build_design(const ScenarioConfig& c) {
    validate_params(c.params);
    DesignChoice d;
    if (c.variant == "no_carrier") {
        d.variant = DesignVariant::NoCarrier;
        d.reference = {ReferenceKind::LinearCombination, c.eta};
        d.carrier = constant_carrier(c.angular_frequency);
        d.phases = {0.0, std::numbers::pi};
        if (c.has_phase_plus)
            d.phases.phase_plus = c.phase_plus;
        if (c.has_phase_minus)
            d.phases.phase_minus = c.phase_minus;
        d.predicted_j =
            no_carrier_closed_form(c.params, d.phases, c.eta, c.amplitude, c.angular_frequency);
    } else {
        d.variant = DesignVariant::NoReference;
        d.reference = {ReferenceKind::None, 0.0};
        double theta_minus = std::numbers::pi / 4.0;
        if (c.has_phase_minus)
            theta_minus = c.phase_minus;
        else if (c.has_phase_plus)
            theta_minus = -c.phase_plus;
        d.phases = {-theta_minus, theta_minus};
        if (c.has_phase_plus && c.has_phase_minus &&
            angle_distance(c.phase_plus, -c.phase_minus) > 1e-9)
            throw std::invalid_argument(
                "design.phase_plus/phase_minus: the no_reference design needs antisymmetric "
                "phases (phase_plus = -phase_minus)");
        const double carrier_phase =
            c.has_carrier_phase ? c.carrier_phase
                                : 2.0 * steady_state_phase(c.params, c.angular_frequency);
        d.carrier = double_frequency_carrier(c.angular_frequency, carrier_phase);
        d.predicted_j = no_reference_closed_form(c.params, d.phases.phase_minus, carrier_phase,
                                                 c.amplitude, c.angular_frequency);
    }
    return d;
}

SingleResult run_single(const ScenarioConfig& c, const std::filesystem::path& out) {
    const DesignChoice design = build_design(c);
    const SymbolDuration T = symbol_duration(c.angular_frequency, c.periods);
    const SimSettings settings{c.steps_per_period};
    const double step = T.fundamental_period() / settings.steps_per_period;

    SingleResult r;
    r.design = design;

    const Trajectory traj_plus = integrate_motion(
        c.params,
        make_forcing(c.params, c.amplitude, c.angular_frequency, design.phases, design.reference,
                     Symbol::plus),
        T, step);
    const Trajectory traj_minus = integrate_motion(
        c.params,
        make_forcing(c.params, c.amplitude, c.angular_frequency, design.phases, design.reference,
                     Symbol::minus),
        T, step);

    r.demod_plus = apply_noise(demodulate(c.params, traj_plus, design.carrier, T, NoiseSpec{}),
                               draw_noise(c, c.sigma, design.carrier, T, 0));
    r.demod_minus = apply_noise(demodulate(c.params, traj_minus, design.carrier, T, NoiseSpec{}),
                                draw_noise(c, c.sigma, design.carrier, T, 1));

    r.report.simulated =
        std::abs(r.demod_plus.statistic_noiseless - r.demod_minus.statistic_noiseless);
    r.report.steady_state = steady_state_distance(c.params, c.amplitude, c.angular_frequency,
                                                  design.phases, design.reference, design.carrier);
    r.report.closed_form = try_closed_form_distance(c.params, design.phases, design.reference,
                                                    design.carrier, c.amplitude,
                                                    c.angular_frequency);
    r.report.magnitude_coefficient =
        magnitude_coefficient(c.params, c.amplitude, c.angular_frequency);
    r.report.steady_state_phase = steady_state_phase(c.params, c.angular_frequency);

    const DecisionContext ctx = make_decision_context(r.demod_plus.statistic_noiseless,
                                                      r.demod_minus.statistic_noiseless);
    r.detected_plus = detect(r.demod_plus, ctx);
    r.detected_minus = detect(r.demod_minus, ctx);

    std::ostringstream csv;
    csv << comment_line(c, "single");
    csv << "quantity,value\n";
    csv << "magnitude_coefficient," << format_double(r.report.magnitude_coefficient) << "\n";
    csv << "steady_state_phase," << format_double(r.report.steady_state_phase) << "\n";
    csv << "j_simulated," << format_double(r.report.simulated) << "\n";
    csv << "j_steady_state," << format_double(r.report.steady_state) << "\n";
    if (r.report.closed_form)
        csv << "j_closed_form," << format_double(*r.report.closed_form) << "\n";
    csv << "predicted_j," << format_double(design.predicted_j) << "\n";
    csv << "d0_plus," << format_double(r.demod_plus.statistic_noiseless) << "\n";
    csv << "d0_minus," << format_double(r.demod_minus.statistic_noiseless) << "\n";
    csv << "noise_plus," << format_double(r.demod_plus.noise_sample) << "\n";
    csv << "noise_minus," << format_double(r.demod_minus.noise_sample) << "\n";
    csv << "d_plus," << format_double(r.demod_plus.statistic) << "\n";
    csv << "d_minus," << format_double(r.demod_minus.statistic) << "\n";
    csv << "detected_plus," << to_string(r.detected_plus) << "\n";
    csv << "detected_minus," << to_string(r.detected_minus) << "\n";
    write_file(out, csv.str());
    write_manifest(out, c, "single");

    if (!c.trajectory_out.empty())
        write_trajectory_csv(traj_plus, c, c.trajectory_out);
    return r;
}

void write_trajectory_csv(const Trajectory& traj, const ScenarioConfig& c,
                          const std::filesystem::path& out) {
    std::ostringstream csv;
    csv << comment_line(c, "trajectory");
    csv << "t,x,v\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        csv << format_double(traj.times[i]) << "," << format_double(traj.displacement[i]) << ","
            << format_double(traj.velocity[i]) << "\n";
    write_file(out, csv.str());
}

std::vector<BerPoint> run_ber(const ScenarioConfig& c, const std::filesystem::path& out) {
    if (c.trials < 100)
        throw std::invalid_argument(
            "run.trials: BER campaigns need at least 100 trials for a meaningful interval");
    const DesignChoice design = build_design(c);
    const SymbolDuration T = symbol_duration(c.angular_frequency, c.periods);
    const SimSettings settings{c.steps_per_period};

    const DecisionContext ctx = calibrate(c.params, c.amplitude, c.angular_frequency,
                                          design.phases, design.reference, design.carrier, T,
                                          settings);
    const double distance = std::abs(ctx.d_plus_ref - ctx.d_minus_ref);

    std::vector<double> sigmas = c.sigma_values;
    if (sigmas.empty()) {
        // Auto scale: target J/(2 sigma_n) of 4, 3, 2, 1.5, 1, 0.5.
        for (double x : {4.0, 3.0, 2.0, 1.5, 1.0, 0.5})
            sigmas.push_back(distance * std::sqrt(T.duration) / (2.0 * x));
    }

    const std::size_t trials = static_cast<std::size_t>(c.trials);
    std::vector<BerPoint> points;
    points.reserve(sigmas.size());
    for (std::size_t k = 0; k < sigmas.size(); ++k) {
        std::size_t errors = 0;
        for (std::size_t i = 0; i < trials; ++i) {
            const std::uint64_t draw = k * trials + i;
            const bool send_plus = (counter_u64(c.seed, rng_stream::symbols, draw) & 1u) == 0;
            const double d0 = send_plus ? ctx.d_plus_ref : ctx.d_minus_ref;
            const double statistic = d0 + draw_noise(c, sigmas[k], design.carrier, T, draw);
            const Symbol detected = detect_statistic(statistic, ctx);
            if (detected != (send_plus ? Symbol::plus : Symbol::minus))
                ++errors;
        }
        BerPoint pt;
        pt.sigma = sigmas[k];
        pt.sigma_n = sigmas[k] / std::sqrt(T.duration);
        pt.trials = trials;
        pt.errors = errors;
        pt.ber = static_cast<double>(errors) / static_cast<double>(trials);
        const WilsonInterval w = wilson_interval(errors, trials);
        pt.wilson_low = w.low;
        pt.wilson_high = w.high;
        points.push_back(pt);
    }

    std::ostringstream csv;
    csv << comment_line(c, "ber");
    csv << "sigma,sigma_n,trials,errors,ber,wilson_low,wilson_high\n";
    for (const BerPoint& pt : points)
        csv << format_double(pt.sigma) << "," << format_double(pt.sigma_n) << "," << pt.trials
            << "," << pt.errors << "," << format_double(pt.ber) << ","
            << format_double(pt.wilson_low) << "," << format_double(pt.wilson_high) << "\n";
    write_file(out, csv.str());
    write_manifest(out, c, "ber");
    return points;
}

SweepResult run_sweep(const ScenarioConfig& c, const std::filesystem::path& out) {
    const SymbolDuration T = symbol_duration(c.angular_frequency, c.periods);
    const SimSettings settings{c.steps_per_period};
    SweepResult res;

    auto design_rows = [&](SweepAxis axis) {
        // Angle/eta sweeps evaluate the steady-state distance (plus the
        // applicable closed form); the simulated distance is optional since
        // it costs two time-domain runs per point.
        const bool numeric = c.with_numeric;
        res.columns = {to_string(axis), "j_closed_form", "j_steady_state"};
        if (numeric)
            res.columns.push_back("j_simulated");

        const int n = c.points;
        for (int i = 0; i < n; ++i) {
            PhasePair pair;
            ReferenceDesign ref;
            CarrierSpec carrier;
            double swept = 0.0;
            if (axis == SweepAxis::DeltaTheta) {
                swept = two_pi * static_cast<double>(i) / n;
                pair = {0.0, swept};
                ref = {ReferenceKind::LinearCombination, c.eta};
                carrier = constant_carrier(c.angular_frequency);
            } else if (axis == SweepAxis::ThetaMinus) {
                swept = (std::numbers::pi / 2.0) * static_cast<double>(i + 1) / n;
                pair = {-swept, swept};
                ref = {ReferenceKind::None, 0.0};
                const double carrier_phase =
                    c.has_carrier_phase
                        ? c.carrier_phase
                        : 2.0 * steady_state_phase(c.params, c.angular_frequency);
                carrier = double_frequency_carrier(c.angular_frequency, carrier_phase);
            } else if (axis == SweepAxis::ThetaC) {
                swept = two_pi * static_cast<double>(i) / n;
                const double theta_minus =
                    c.has_phase_minus ? c.phase_minus : std::numbers::pi / 4.0;
                pair = {-theta_minus, theta_minus};
                ref = {ReferenceKind::None, 0.0};
                carrier = double_frequency_carrier(c.angular_frequency, swept);
            } else {  // Eta
                swept = n == 1 ? c.eta_min
                               : c.eta_min + (c.eta_max - c.eta_min) * static_cast<double>(i) /
                                                 (n - 1);
                pair = {0.0, std::numbers::pi};
                if (c.has_phase_minus)
                    pair.phase_minus = c.phase_minus;
                if (c.has_phase_plus)
                    pair.phase_plus = c.phase_plus;
                ref = {ReferenceKind::LinearCombination, swept};
                carrier = constant_carrier(c.angular_frequency);
            }

            std::vector<double> row;
            row.push_back(swept);
            row.push_back(closed_form_distance(c.params, pair, ref, carrier, c.amplitude,
                                               c.angular_frequency));
            row.push_back(steady_state_distance(c.params, c.amplitude, c.angular_frequency, pair,
                                                ref, carrier));
            if (numeric)
                row.push_back(simulated_distance(c.params, c.amplitude, c.angular_frequency, pair,
                                                 ref, carrier, T, settings));
            res.rows.push_back(std::move(row));
        }
    };

    switch (c.axis) {
        case SweepAxis::DeltaTheta:
        case SweepAxis::ThetaMinus:
        case SweepAxis::ThetaC:
        case SweepAxis::Eta:
            design_rows(c.axis);
            break;
        case SweepAxis::Periods: {
            const DesignChoice design = build_design(c);
            res.columns = {"s", "j_simulated", "j_steady_state", "gap"};
            const double j_ss =
                steady_state_distance(c.params, c.amplitude, c.angular_frequency, design.phases,
                                      design.reference, design.carrier);
            for (int s : c.s_values) {
                const SymbolDuration Ts = symbol_duration(c.angular_frequency, s);
                const double j_sim =
                    simulated_distance(c.params, c.amplitude, c.angular_frequency, design.phases,
                                       design.reference, design.carrier, Ts, settings);
                res.rows.push_back({static_cast<double>(s), j_sim, j_ss, std::abs(j_sim - j_ss)});
            }
            break;
        }
        case SweepAxis::Sigma: {
            const std::vector<BerPoint> pts = run_ber(c, out);
            res.columns = {"sigma", "sigma_n", "trials", "errors", "ber", "wilson_low",
                           "wilson_high"};
            for (const BerPoint& pt : pts)
                res.rows.push_back({pt.sigma, pt.sigma_n, static_cast<double>(pt.trials),
                                    static_cast<double>(pt.errors), pt.ber, pt.wilson_low,
                                    pt.wilson_high});
            return res;  // run_ber already wrote the CSV and manifest
        }
    }

    std::ostringstream csv;
    csv << comment_line(c, "sweep");
    for (std::size_t i = 0; i < res.columns.size(); ++i)
        csv << (i ? "," : "") << res.columns[i];
    csv << "\n";
    for (const auto& row : res.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            csv << (i ? "," : "") << format_double(row[i]);
        csv << "\n";
    }
    write_file(out, csv.str());
    write_manifest(out, c, "sweep");
    return res;
}

}  // namespace cntrx
