#include <doctest.h>

#include <cmath>

#include "cntrx/dynamics.hpp"
#include "cntrx/quadrature.hpp"
#include "helpers.hpp"

using namespace cntrx;
using cntrx::test::tail_phasor;

namespace {

const CntParams kDefaults{1.0, 0.1, 1.0, 1.0, 0.0, 1.0};

}  // namespace

TEST_CASE("steady_state_response at resonance with unit damping") {
    const CntParams p{1.0, 1.0, 1.0, 1.0, 0.0, 1.0};
    const SteadyStateResponse r = steady_state_response(p, {1.0, 1.0, 0.0});
    CHECK(r.amplitude == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.phase == doctest::Approx(-std::numbers::pi / 2.0).epsilon(1e-15));
}

TEST_CASE("steady_state_response, stiffness-dominated without damping") {
    const CntParams p{1.0, 0.0, 2.0, 1.0, 0.0, 1.0};
    const SteadyStateResponse r = steady_state_response(p, {1.0, 1.0, 0.0});
    CHECK(r.amplitude == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.phase == 0.0);
}

TEST_CASE("steady_state_response above resonance: formula value and measured lag") {
    // gamma=0.1, omega=2: amplitude 1/sqrt(9.04), lag -atan2(0.2, -3).
    const SteadyStateResponse r = steady_state_response(kDefaults, {1.0, 2.0, 0.0});
    CHECK(r.amplitude == doctest::Approx(0.3325950526188697).epsilon(1e-14));
    CHECK(r.phase == doctest::Approx(-3.0750244898139694).epsilon(1e-14));
    CHECK(r.phase == doctest::Approx(-std::atan2(0.1 * 2.0, 1.0 - 4.0)).epsilon(1e-15));

    // Long integration from rest settles onto the same amplitude and lag.
    const SymbolDuration T = symbol_duration(2.0, 100);
    const int spp = 1000;
    const Trajectory traj = integrate_motion(
        kDefaults, [](double t) { return std::cos(2.0 * t); }, T, T.fundamental_period() / spp);
    const auto [amp, phase] = tail_phasor(traj, 2.0, spp);
    CHECK(amp == doctest::Approx(r.amplitude).epsilon(1e-6));
    CHECK(angle_distance(phase, r.total_phase()) < 1e-5);
}

TEST_CASE("steady_state_response rejects undamped exact resonance") {
    const CntParams p{1.0, 0.0, 1.0, 1.0, 0.0, 1.0};
    CHECK_THROWS_AS(steady_state_response(p, {1.0, 1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("negative drive sign folds into the drive phase, not the amplitude") {
    CntParams p = kDefaults;
    p.charge = -1.0;
    const SteadyStateResponse neg = steady_state_response(p, {1.0, 1.0, 0.3});
    const SteadyStateResponse pos = steady_state_response(kDefaults, {1.0, 1.0, 0.3});
    CHECK(neg.amplitude == doctest::Approx(pos.amplitude));
    CHECK(neg.phase == pos.phase);
    for (double t : {0.0, 0.4, 1.9, 5.3})
        CHECK(neg.eval(t) == doctest::Approx(-pos.eval(t)).epsilon(1e-13));
}

TEST_CASE("response phase stays in (-pi, 0] and is continuous across resonance") {
    double prev = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double omega = 0.5 + 1.0 * static_cast<double>(i) / 999.0;
        const double phase = steady_state_response(kDefaults, {1.0, omega, 0.0}).phase;
        CHECK(phase <= 0.0);
        CHECK(phase > -std::numbers::pi);
        if (i > 0)
            CHECK(std::abs(phase - prev) < 0.1);  // no branch jump at resonance
        prev = phase;
    }
}

TEST_CASE("superpose") {
    const SteadyStateResponse r = steady_state_response(kDefaults, {1.0, 1.0, 0.4});
    SUBCASE("self-cancellation") {
        const std::pair<SteadyStateResponse, int> terms[] = {{r, 1}, {r, -1}};
        const SuperposedResponse sum = superpose(terms);
        for (double t : {0.0, 1.0, 2.5, 7.0})
            CHECK(std::abs(sum.eval(t)) < 1e-15);
        CHECK(sum.collapsed().amplitude < 1e-15);
    }
    SUBCASE("identity") {
        const std::pair<SteadyStateResponse, int> terms[] = {{r, 1}};
        const SuperposedResponse one = superpose(terms);
        for (double t : {0.0, 1.0, 2.5})
            CHECK(one.eval(t) == doctest::Approx(r.eval(t)).epsilon(1e-15));
    }
    SUBCASE("mixed frequencies are rejected") {
        const SteadyStateResponse other = steady_state_response(kDefaults, {1.0, 2.0, 0.0});
        const std::pair<SteadyStateResponse, int> terms[] = {{r, 1}, {other, 1}};
        CHECK_THROWS_AS(superpose(terms), std::invalid_argument);
    }
    SUBCASE("signs other than +-1 are rejected") {
        const std::pair<SteadyStateResponse, int> terms[] = {{r, 2}};
        CHECK_THROWS_AS(superpose(terms), std::invalid_argument);
    }
}

TEST_CASE("sum of antisymmetric-phase responses equals the response to the summed drive") {
    // For phase_plus = -phase_minus the summed incoming drive collapses to
    // 2 A cos(theta_minus) cos(w t); the superposed response must match the
    // steady state of that single sinusoid pointwise, with amplitude
    // 2 Atilde |cos(theta_minus)| and total phase on the expected lag branch.
    for (double theta_minus : {std::numbers::pi / 3.0, 2.0 * std::numbers::pi / 3.0}) {
        const SteadyStateResponse plus =
            steady_state_response(kDefaults, {1.0, 1.0, -theta_minus});
        const SteadyStateResponse minus =
            steady_state_response(kDefaults, {1.0, 1.0, theta_minus});
        const std::pair<SteadyStateResponse, int> terms[] = {{plus, 1}, {minus, 1}};
        const SuperposedResponse sum = superpose(terms);

        const Phasor drive_sum =
            phasor_sum(std::vector<Phasor>{{1.0, -theta_minus}, {1.0, theta_minus}});
        const SteadyStateResponse direct =
            steady_state_response(kDefaults, {drive_sum.amplitude, 1.0, drive_sum.phase});
        for (double t : {0.0, 0.3, 1.7, 4.1, 6.0})
            CHECK(std::abs(sum.eval(t) - direct.eval(t)) < 1e-12);

        const double mag = steady_state_response(kDefaults, {1.0, 1.0, 0.0}).amplitude;
        const Phasor collapsed = sum.collapsed();
        CHECK(collapsed.amplitude ==
              doctest::Approx(2.0 * mag * std::abs(std::cos(theta_minus))).epsilon(1e-12));
        const double lag = direct.phase;
        const bool on_lag_branch = angle_distance(collapsed.phase, lag) < 1e-9 ||
                                   angle_distance(collapsed.phase, lag - std::numbers::pi) < 1e-9;
        CHECK(on_lag_branch);
    }
}

TEST_CASE("difference of antisymmetric-phase responses is a sine at the lag branch") {
    // With phase_plus = -phase_minus the difference drive collapses to
    // 2 A sin(theta_minus) sin(w t), so the response difference must equal
    // +-2 Atilde sin(theta_minus) sin(w t + lag) with one consistent sign
    // (the two-branch lag shows up as exactly that sign).
    const double mag = steady_state_response(kDefaults, {1.0, 1.0, 0.0}).amplitude;
    const double lag = steady_state_response(kDefaults, {1.0, 1.0, 0.0}).phase;
    for (double theta_minus : {std::numbers::pi / 5.0, 2.4}) {
        const SteadyStateResponse plus =
            steady_state_response(kDefaults, {1.0, 1.0, -theta_minus});
        const SteadyStateResponse minus =
            steady_state_response(kDefaults, {1.0, 1.0, theta_minus});
        const std::pair<SteadyStateResponse, int> terms[] = {{plus, 1}, {minus, -1}};
        const SuperposedResponse diff = superpose(terms);
        auto expected = [&](double t) {
            return 2.0 * mag * std::sin(theta_minus) * std::sin(t + lag);
        };
        const double sign = diff.eval(0.3) / expected(0.3) > 0.0 ? 1.0 : -1.0;
        for (double t : {0.0, 0.3, 1.1, 2.9, 5.2})
            CHECK(std::abs(diff.eval(t) - sign * expected(t)) < 1e-12);
    }
}

TEST_CASE("integrate_motion at rest with zero forcing stays at rest") {
    const SymbolDuration T = symbol_duration(1.0, 2);
    const Trajectory traj =
        integrate_motion(kDefaults, [](double) { return 0.0; }, T, T.fundamental_period() / 200);
    for (double x : traj.displacement)
        CHECK(x == 0.0);
    for (double v : traj.velocity)
        CHECK(v == 0.0);
}

TEST_CASE("undamped free oscillation reproduces cos(t)") {
    const CntParams p{1.0, 0.0, 1.0, 1.0, 0.0, 1.0};
    const SymbolDuration T = symbol_duration(1.0, 10);
    const Trajectory traj = integrate_motion(p, [](double) { return 0.0; }, T,
                                             T.fundamental_period() / 1000, 1.0, 0.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        worst = std::max(worst, std::abs(traj.displacement[i] - std::cos(traj.times[i])));
    CHECK(worst < 1e-8);
}

TEST_CASE("forced trajectory from rest converges to the analytic steady state") {
    const WaveSpec drive{1.0, 1.0, 0.0};
    const SteadyStateResponse ss = steady_state_response(kDefaults, drive);
    const SymbolDuration T = symbol_duration(1.0, 200);
    const int spp = 1000;
    const Trajectory traj = integrate_motion(
        kDefaults, [&](double t) { return eval_wave(drive, t); }, T,
        T.fundamental_period() / spp);
    // Max gap over the last period, relative to the response amplitude.
    double worst = 0.0;
    for (std::size_t i = traj.times.size() - spp - 1; i < traj.times.size(); ++i)
        worst = std::max(worst, std::abs(traj.displacement[i] - ss.eval(traj.times[i])));
    CHECK(worst / ss.amplitude < 1e-6);
}

TEST_CASE("integrate_motion guards") {
    const SymbolDuration T = symbol_duration(1.0, 1);
    SUBCASE("step too coarse") {
        CHECK_THROWS_AS(integrate_motion(kDefaults, [](double) { return 0.0; }, T,
                                         T.fundamental_period() / 100),
                        std::invalid_argument);
    }
    SUBCASE("step must divide the duration") {
        CHECK_THROWS_AS(
            integrate_motion(kDefaults, [](double) { return 0.0; }, T, T.duration / 1000.5),
            std::invalid_argument);
    }
    SUBCASE("nonfinite forcing") {
        auto bad = [](double t) { return t < 3.0 ? 0.0 : std::nan(""); };
        CHECK_THROWS_AS(
            integrate_motion(kDefaults, bad, T, T.fundamental_period() / 1000),
            std::runtime_error);
    }
}

TEST_CASE("RK4 halves the error by about 2^4 when the step halves") {
    const WaveSpec drive{1.0, 1.0, 0.0};
    const SteadyStateResponse ss = steady_state_response(kDefaults, drive);
    const SymbolDuration T = symbol_duration(1.0, 100);
    auto tail_error = [&](int spp) {
        const Trajectory traj = integrate_motion(
            kDefaults, [&](double t) { return eval_wave(drive, t); }, T,
            T.fundamental_period() / spp);
        double worst = 0.0;
        for (std::size_t i = traj.times.size() - spp - 1; i < traj.times.size(); ++i)
            worst = std::max(worst, std::abs(traj.displacement[i] - ss.eval(traj.times[i])));
        return worst;
    };
    const double ratio = tail_error(1000) / tail_error(2000);
    CHECK(ratio >= 12.0);
    CHECK(ratio <= 20.0);
}

TEST_CASE("the motion equation is linear in the forcing") {
    const SymbolDuration T = symbol_duration(1.0, 20);
    const double step = T.fundamental_period() / 1000;
    auto f1 = [](double t) { return std::cos(t); };
    auto f2 = [](double t) { return 0.5 * std::cos(t + 1.1); };
    const Trajectory a = integrate_motion(kDefaults, f1, T, step, 0.3, -0.2);
    const Trajectory b = integrate_motion(kDefaults, f2, T, step, 0.0, 0.0);
    const Trajectory c = integrate_motion(
        kDefaults, [&](double t) { return f1(t) + f2(t); }, T, step, 0.3, -0.2);
    double worst = 0.0;
    for (std::size_t i = 0; i < c.times.size(); ++i) {
        worst = std::max(worst,
                         std::abs(c.displacement[i] - (a.displacement[i] + b.displacement[i])));
        worst = std::max(worst, std::abs(c.velocity[i] - (a.velocity[i] + b.velocity[i])));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("transient_bound") {
    CHECK(transient_bound(kDefaults, two_pi * 100.0) ==
          doctest::Approx(2.2711010683240965e-14).epsilon(1e-12));
    CHECK(transient_bound(CntParams{1.0, 2.0, 1.0, 1.0, 0.0, 1.0}, 0.0) == 1.0);
    CHECK(transient_bound(kDefaults, symbol_duration(1.0, 100)) ==
          doctest::Approx(std::exp(-10.0 * std::numbers::pi)));

    SUBCASE("rejects zero viscosity") {
        CntParams p = kDefaults;
        p.viscosity = 0.0;
        CHECK_THROWS_AS(transient_bound(p, 1.0), std::invalid_argument);
    }
    SUBCASE("smallest period count pushing the bound below 1e-6 is 44") {
        int s = 1;
        while (transient_bound(kDefaults, symbol_duration(1.0, s)) >= 1e-6)
            ++s;
        CHECK(s == 44);
    }
}
