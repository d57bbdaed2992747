#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "cntrx/csv.hpp"
#include "cntrx/runner.hpp"
#include "cntrx/stats.hpp"

using namespace cntrx;

namespace {

std::filesystem::path scratch_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "cntrx-tests";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string read_bytes(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("an empty config yields the documented defaults") {
    const ScenarioConfig c = parse_config_text("", "empty.ini");
    CHECK(c.params.mass == 1.0);
    CHECK(c.params.viscosity == 0.1);
    CHECK(c.amplitude == 1.0);
    CHECK(c.variant == "no_carrier");
    CHECK(c.periods == 200);
    CHECK(c.steps_per_period == 1000);
    CHECK(c.trials == 1000);
    CHECK(c.sigma == 0.0);
    CHECK(c.noise_model == NoiseModel::Direct);
    CHECK(c.axis == SweepAxis::DeltaTheta);
    CHECK(c.s_values == std::vector<int>{10, 50, 200});
}

TEST_CASE("config parsing diagnostics") {
    SUBCASE("unknown keys are named with their line") {
        try {
            parse_config_text("[model]\nmass = 2\nbogus = 1\n", "t.ini");
            FAIL("expected a parse error");
        } catch (const std::invalid_argument& e) {
            const std::string msg = e.what();
            CHECK(msg.find("t.ini:3") != std::string::npos);
            CHECK(msg.find("bogus") != std::string::npos);
            CHECK(msg.find("model") != std::string::npos);
        }
    }
    SUBCASE("unknown sections are rejected") {
        CHECK_THROWS_AS(parse_config_text("[physics]\nmass = 2\n", "t.ini"),
                        std::invalid_argument);
    }
    SUBCASE("malformed numbers are rejected with the field name") {
        try {
            parse_config_text("[model]\nmass = heavy\n", "t.ini");
            FAIL("expected a parse error");
        } catch (const std::invalid_argument& e) {
            const std::string msg = e.what();
            CHECK(msg.find("t.ini:2") != std::string::npos);
            CHECK(msg.find("model.mass") != std::string::npos);
        }
    }
    SUBCASE("field violations carry the section.key path") {
        try {
            parse_config_text("[run]\nperiods = 0\n", "t.ini");
            FAIL("expected a validation error");
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find("run.periods") != std::string::npos);
        }
    }
    SUBCASE("duplicate keys are rejected") {
        CHECK_THROWS_AS(parse_config_text("[model]\nmass = 1\nmass = 2\n", "t.ini"),
                        std::invalid_argument);
    }
    SUBCASE("keys before any section are rejected") {
        CHECK_THROWS_AS(parse_config_text("mass = 1\n", "t.ini"), std::invalid_argument);
    }
    SUBCASE("model invariants are enforced at parse time") {
        CHECK_THROWS_AS(parse_config_text("[model]\nmass = -1\n", "t.ini"),
                        std::invalid_argument);
        CHECK_THROWS_AS(parse_config_text("[run]\nsteps_per_period = 100\n", "t.ini"),
                        std::invalid_argument);
        CHECK_THROWS_AS(parse_config_text("[design]\nvariant = fancy\n", "t.ini"),
                        std::invalid_argument);
        CHECK_THROWS_AS(parse_config_text("[run]\naxis = nope\n", "t.ini"),
                        std::invalid_argument);
    }
    SUBCASE("comments and lists parse") {
        const ScenarioConfig c = parse_config_text(
            "# comment\n[run]\nsigma_values = 0.5, 1.0, 2\ns_values = 5,25\n", "t.ini");
        CHECK(c.sigma_values == std::vector<double>{0.5, 1.0, 2.0});
        CHECK(c.s_values == std::vector<int>{5, 25});
    }
    SUBCASE("missing files raise an I/O error") {
        CHECK_THROWS_AS(load_config("definitely_not_here.ini"), IoError);
    }
}

TEST_CASE("build_design resolves variants") {
    ScenarioConfig c;
    SUBCASE("no_carrier defaults") {
        const DesignChoice d = build_design(c);
        CHECK(d.variant == DesignVariant::NoCarrier);
        CHECK(d.carrier.kind == CarrierKind::ConstantOne);
        CHECK(d.phases.phase_minus == doctest::Approx(std::numbers::pi));
    }
    SUBCASE("no_reference defaults and antisymmetry enforcement") {
        c.variant = "no_reference";
        const DesignChoice d = build_design(c);
        CHECK(d.carrier.kind == CarrierKind::DoubleFrequencySine);
        CHECK(d.phases.phase_plus == doctest::Approx(-d.phases.phase_minus));

        c.has_phase_minus = true;
        c.phase_minus = 0.5;
        const DesignChoice e = build_design(c);
        CHECK(e.phases.phase_plus == doctest::Approx(-0.5));

        c.has_phase_plus = true;
        c.phase_plus = 0.3;  // not -0.5
        CHECK_THROWS_AS(build_design(c), std::invalid_argument);
    }
}

TEST_CASE("run_single is deterministic and self-consistent") {
    const auto dir = scratch_dir();
    ScenarioConfig c;
    c.periods = 50;
    c.steps_per_period = 250;
    c.sigma = 0.5;
    c.seed = 99;

    const auto out_a = dir / "single_a.csv";
    const auto out_b = dir / "single_b.csv";
    const SingleResult res = run_single(c, out_a);
    run_single(c, out_b);

    SUBCASE("byte-identical reruns, manifest included") {
        CHECK(read_bytes(out_a) == read_bytes(out_b));
        CHECK(read_bytes(out_a.string() + ".manifest") ==
              read_bytes(out_b.string() + ".manifest"));
    }
    SUBCASE("CSV starts with the config comment, then the header") {
        std::istringstream in(read_bytes(out_a));
        std::string line1, line2;
        std::getline(in, line1);
        std::getline(in, line2);
        CHECK(line1.rfind("# cntrx single", 0) == 0);
        CHECK(line1.find("seed=99") != std::string::npos);
        CHECK(line2 == "quantity,value");
    }
    SUBCASE("reported routes are consistent") {
        REQUIRE(res.report.closed_form.has_value());
        CHECK(std::abs(res.report.steady_state - *res.report.closed_form) <
              1e-8 * *res.report.closed_form);
        // At s=50 the transient contributes roughly 3m/(viscosity*T_s) ~ 10%.
        const double rel =
            std::abs(res.report.simulated - res.report.steady_state) / res.report.steady_state;
        CHECK(rel > 0.02);
        CHECK(rel < 0.2);
        CHECK(res.demod_plus.statistic ==
              res.demod_plus.statistic_noiseless + res.demod_plus.noise_sample);
    }
    SUBCASE("noiseless detection reproduces the transmitted symbols") {
        ScenarioConfig quiet = c;
        quiet.sigma = 0.0;
        const SingleResult q = run_single(quiet, dir / "single_quiet.csv");
        CHECK(q.detected_plus == Symbol::plus);
        CHECK(q.detected_minus == Symbol::minus);
    }
}

TEST_CASE("run_single exports the trajectory when asked") {
    const auto dir = scratch_dir();
    ScenarioConfig c;
    c.periods = 2;
    c.steps_per_period = 200;
    c.trajectory_out = (dir / "traj.csv").string();
    run_single(c, dir / "single_traj.csv");
    std::istringstream in(read_bytes(dir / "traj.csv"));
    std::string line;
    std::getline(in, line);
    CHECK(line.rfind("# cntrx trajectory", 0) == 0);
    std::getline(in, line);
    CHECK(line == "t,x,v");
    std::size_t rows = 0;
    while (std::getline(in, line))
        ++rows;
    CHECK(rows == 401);  // 2 periods x 200 steps + initial sample
}

TEST_CASE("run_ber") {
    const auto dir = scratch_dir();
    ScenarioConfig c;
    c.periods = 200;
    c.steps_per_period = 1000;
    c.seed = 20250801;

    SUBCASE("sigma = 0 never errs") {
        c.trials = 500;
        c.sigma_values = {0.0};
        const auto pts = run_ber(c, dir / "ber_zero.csv");
        REQUIRE(pts.size() == 1);
        CHECK(pts[0].errors == 0);
        CHECK(pts[0].ber == 0.0);
    }
    SUBCASE("the estimate at a two-sigma margin brackets the Gaussian tail") {
        // sigma_n = J/4 makes the true error rate Q(2) exactly.
        const DesignChoice d = build_design(c);
        const SymbolDuration T = symbol_duration(c.angular_frequency, c.periods);
        const DecisionContext ctx =
            calibrate(c.params, c.amplitude, c.angular_frequency, d.phases, d.reference,
                      d.carrier, T, SimSettings{c.steps_per_period});
        const double j = std::abs(ctx.d_plus_ref - ctx.d_minus_ref);
        c.trials = 30000;
        c.sigma_values = {j * std::sqrt(T.duration) / 4.0};
        const auto pts = run_ber(c, dir / "ber_q2.csv");
        REQUIRE(pts.size() == 1);
        const WilsonInterval w = wilson_interval(pts[0].errors, pts[0].trials);
        CHECK(w.contains(gaussian_tail(2.0)));
        CHECK(pts[0].wilson_low == doctest::Approx(w.low));
        CHECK(pts[0].wilson_high == doctest::Approx(w.high));
    }
    SUBCASE("overwhelming noise drives the error rate to one half") {
        const DesignChoice d = build_design(c);
        const SymbolDuration T = symbol_duration(c.angular_frequency, c.periods);
        const DecisionContext ctx =
            calibrate(c.params, c.amplitude, c.angular_frequency, d.phases, d.reference,
                      d.carrier, T, SimSettings{c.steps_per_period});
        const double j = std::abs(ctx.d_plus_ref - ctx.d_minus_ref);
        c.trials = 20000;
        c.sigma_values = {1000.0 * j * std::sqrt(T.duration)};
        const auto pts = run_ber(c, dir / "ber_half.csv");
        const WilsonInterval w = wilson_interval(pts[0].errors, pts[0].trials);
        CHECK(w.contains(0.5));
    }
    SUBCASE("too few trials are rejected") {
        c.trials = 99;
        CHECK_THROWS_AS(run_ber(c, dir / "ber_bad.csv"), std::invalid_argument);
    }
    SUBCASE("the path noise model feeds the campaign the same way") {
        c.periods = 20;
        c.noise_model = NoiseModel::Path;
        c.path_steps_per_period = 128;
        const DesignChoice d = build_design(c);
        const SymbolDuration T = symbol_duration(c.angular_frequency, c.periods);
        const DecisionContext ctx =
            calibrate(c.params, c.amplitude, c.angular_frequency, d.phases, d.reference,
                      d.carrier, T, SimSettings{c.steps_per_period});
        const double j = std::abs(ctx.d_plus_ref - ctx.d_minus_ref);
        c.trials = 2000;
        c.sigma_values = {j * std::sqrt(T.duration) / 4.0};
        const auto pts = run_ber(c, dir / "ber_path.csv");
        const WilsonInterval w = wilson_interval(pts[0].errors, pts[0].trials);
        CHECK(w.contains(gaussian_tail(2.0)));
        CHECK(read_bytes(dir / "ber_path.csv") ==
              (run_ber(c, dir / "ber_path2.csv"), read_bytes(dir / "ber_path2.csv")));
    }
    SUBCASE("auto sigma scaling produces a descending waterfall") {
        c.trials = 2000;
        c.sigma_values.clear();
        const auto pts = run_ber(c, dir / "ber_auto.csv");
        REQUIRE(pts.size() == 6);
        CHECK(pts.front().ber <= pts.back().ber);  // weakest noise first
    }
}

TEST_CASE("run_sweep") {
    const auto dir = scratch_dir();
    ScenarioConfig c;
    SUBCASE("delta_theta grid peaks at pi") {
        c.points = 64;
        const SweepResult res = run_sweep(c, dir / "sweep_dt.csv");
        REQUIRE(res.rows.size() == 64);
        CHECK(res.columns ==
              std::vector<std::string>{"delta_theta", "j_closed_form", "j_steady_state"});
        std::size_t best = 0;
        for (std::size_t i = 0; i < res.rows.size(); ++i) {
            if (res.rows[i][2] > res.rows[best][2])
                best = i;
            CHECK(std::abs(res.rows[i][1] - res.rows[i][2]) <=
                  1e-8 * std::max(1.0, res.rows[i][1]));
        }
        CHECK(std::abs(res.rows[best][0] - std::numbers::pi) < two_pi / 64 + 1e-12);
    }
    SUBCASE("eta grid hits the degenerate point exactly") {
        c.axis = SweepAxis::Eta;
        c.points = 25;  // -2 + k * 0.125 lands on -0.5
        const SweepResult res = run_sweep(c, dir / "sweep_eta.csv");
        REQUIRE(res.rows.size() == 25);
        bool found = false;
        for (const auto& row : res.rows) {
            if (std::abs(row[0] + 0.5) < 1e-12) {
                found = true;
                CHECK(row[1] < 1e-10);
                CHECK(row[2] < 1e-10);
            }
        }
        CHECK(found);
    }
    SUBCASE("period sweep shows the shrinking steady-state gap") {
        c.axis = SweepAxis::Periods;
        c.s_values = {10, 50, 200};
        const SweepResult res = run_sweep(c, dir / "sweep_s.csv");
        REQUIRE(res.rows.size() == 3);
        CHECK(res.columns[3] == "gap");
        CHECK(res.rows[0][3] > res.rows[1][3]);
        CHECK(res.rows[1][3] > res.rows[2][3]);
    }
    SUBCASE("carrier-phase sweep peaks at twice the lag") {
        c.axis = SweepAxis::ThetaC;
        c.variant = "no_reference";
        c.points = 64;
        const SweepResult res = run_sweep(c, dir / "sweep_tc.csv");
        REQUIRE(res.rows.size() == 64);
        std::size_t best = 0;
        for (std::size_t i = 0; i < res.rows.size(); ++i)
            if (res.rows[i][2] > res.rows[best][2])
                best = i;
        // Optimal modulo pi; the grid may find either representative.
        const double expected = 2.0 * steady_state_phase(c.params, 1.0);
        CHECK(angle_distance_mod_pi(res.rows[best][0], expected) < two_pi / 64 + 1e-12);
    }
    SUBCASE("sigma axis delegates to the BER campaign") {
        c.axis = SweepAxis::Sigma;
        c.trials = 200;
        c.sigma_values = {0.0};
        const SweepResult res = run_sweep(c, dir / "sweep_sigma.csv");
        REQUIRE(res.rows.size() == 1);
        CHECK(res.columns.front() == "sigma");
        CHECK(res.rows[0][4] == 0.0);  // ber column
    }
}

TEST_CASE("format_double emits shortest round-trip decimals") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
    CHECK(std::stod(format_double(std::numbers::pi)) == std::numbers::pi);
}
