#include "cntrx/receiver.hpp"

#include <cmath>
#include <vector>

#include "cntrx/quadrature.hpp"
#include "cntrx/rng.hpp"

namespace cntrx {

DecisionContext make_decision_context(double d_plus_ref, double d_minus_ref) {
    if (d_plus_ref == d_minus_ref)
        throw std::invalid_argument("decision context: references must differ");
    return {true, d_plus_ref, d_minus_ref};
}

double noise_sample(const NoiseSpec& noise, const CarrierSpec&, const SymbolDuration& T,
                    std::uint64_t index) {
    if (!(noise.sigma >= 0.0))
        throw std::invalid_argument("noise sigma must be nonnegative");
    if (noise.sigma == 0.0)
        return 0.0;
    return noise.sigma / std::sqrt(T.duration) *
           counter_gaussian(noise.seed, rng_stream::noise, index);
}

double noise_sample_path(const NoiseSpec& noise, const CarrierSpec& c, const SymbolDuration& T,
                         std::size_t steps, std::uint64_t index) {
    if (!(noise.sigma >= 0.0))
        throw std::invalid_argument("noise sigma must be nonnegative");
    if (steps < 8)
        throw std::invalid_argument("noise path needs at least 8 steps");
    if (noise.sigma == 0.0)
        return 0.0;
    // e(t_i) ~ N(0, sigma^2 / h) held over each step, Riemann-summed against
    // the carrier: Var = (sigma^2 h / T_s^2) * sum f_c(t_i)^2.
    const double h = T.duration / static_cast<double>(steps);
    const double scale = noise.sigma / std::sqrt(h);
    KahanSum acc;
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = static_cast<double>(i) * h;
        const double e = scale * counter_gaussian(noise.seed, rng_stream::noise_path,
                                                  index * static_cast<std::uint64_t>(steps) + i);
        acc.add(e * eval_carrier(c, t) * h);
    }
    return acc.value() / T.duration;
}

DemodResult demodulate(const CntParams& p, const Trajectory& traj, const CarrierSpec& c,
                       const SymbolDuration& T, const NoiseSpec& noise,
                       std::uint64_t draw_index) {
    validate_params(p);
    const std::size_t npts = traj.times.size();
    if (npts < 4 || traj.displacement.size() != npts)
        throw std::invalid_argument("demodulate: trajectory too short or inconsistent");
    if (!(traj.step > 0.0))
        throw std::invalid_argument("demodulate: trajectory step must be positive");
    const double tol = 1e-6 * traj.step;
    for (std::size_t i = 1; i < npts; ++i) {
        if (std::abs((traj.times[i] - traj.times[i - 1]) - traj.step) > tol)
            throw std::invalid_argument("demodulate: trajectory grid is not uniform");
    }
    if (std::abs(traj.times.front()) > tol ||
        std::abs(traj.times.back() - T.duration) > 1e-9 * T.duration + tol)
        throw std::invalid_argument("demodulate: trajectory does not cover [0, T_s]");

    std::vector<double> integrand(npts);
    for (std::size_t i = 0; i < npts; ++i)
        integrand[i] =
            emission_current(p, traj.displacement[i]) * eval_carrier(c, traj.times[i]);

    DemodResult r;
    r.duration = T;
    r.statistic_noiseless = simpson_sampled(integrand, traj.step) / T.duration;
    r.noise_sample = noise_sample(noise, c, T, draw_index);
    r.statistic = r.statistic_noiseless + r.noise_sample;
    return r;
}

Symbol detect_statistic(double statistic, const DecisionContext& ctx) {
    if (!ctx.ordering_known)
        throw std::invalid_argument("detect: statistic ordering is not known");
    if (ctx.d_plus_ref == ctx.d_minus_ref)
        throw std::invalid_argument("detect: references must differ");
    const double dist_plus = std::abs(statistic - ctx.d_plus_ref);
    const double dist_minus = std::abs(statistic - ctx.d_minus_ref);
    return dist_plus <= dist_minus ? Symbol::plus : Symbol::minus;
}

Symbol detect(const DemodResult& d, const DecisionContext& ctx) {
    return detect_statistic(d.statistic, ctx);
}

std::function<double(double)> make_forcing(const CntParams& p, double amplitude, double omega_in,
                                           const PhasePair& pair, const ReferenceDesign& ref,
                                           Symbol sym) {
    const WaveSpec incoming = validate_wave(
        {amplitude, omega_in, sym == Symbol::plus ? pair.phase_plus : pair.phase_minus});
    const WaveSpec base{amplitude, omega_in, 0.0};
    const double q = p.charge;
    return [=](double t) {
        return q * (eval_wave(incoming, t) - eval_reference(ref, pair, base, t));
    };
}

double noiseless_statistic(const CntParams& p, double amplitude, double omega_in,
                           const PhasePair& pair, const ReferenceDesign& ref,
                           const CarrierSpec& carrier, const SymbolDuration& T,
                           const SimSettings& settings, Symbol sym) {
    const double step = T.fundamental_period() / settings.steps_per_period;
    const Trajectory traj =
        integrate_motion(p, make_forcing(p, amplitude, omega_in, pair, ref, sym), T, step);
    return demodulate(p, traj, carrier, T, NoiseSpec{}).statistic_noiseless;
}

DecisionContext calibrate(const CntParams& p, double amplitude, double omega_in,
                          const PhasePair& pair, const ReferenceDesign& ref,
                          const CarrierSpec& carrier, const SymbolDuration& T,
                          const SimSettings& settings) {
    const double d_plus =
        noiseless_statistic(p, amplitude, omega_in, pair, ref, carrier, T, settings, Symbol::plus);
    const double d_minus = noiseless_statistic(p, amplitude, omega_in, pair, ref, carrier, T,
                                               settings, Symbol::minus);
    const double scale = std::max(1.0, std::abs(d_plus) + std::abs(d_minus));
    if (std::abs(d_plus - d_minus) <= 1e-12 * scale)
        throw std::invalid_argument("indistinguishable design: D0+ and D0- coincide");
    return {true, d_plus, d_minus};
}

}  // namespace cntrx
