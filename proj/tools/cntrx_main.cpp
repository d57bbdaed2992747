#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <string>

#include <CLI11.hpp>

#include "cntrx/csv.hpp"
#include "cntrx/runner.hpp"
#include "cntrx/verify.hpp"

namespace {

// Exit codes: 0 success, 1 validation error, 2 runtime/numerical error,
// 3 I/O error.
constexpr int kOk = 0;
constexpr int kValidationError = 1;
constexpr int kRuntimeError = 2;
constexpr int kIoError = 3;

cntrx::ScenarioConfig resolve_config(const std::string& config_path, std::uint64_t seed) {
    cntrx::ScenarioConfig c =
        config_path.empty() ? cntrx::ScenarioConfig{} : cntrx::load_config(config_path);
    c.seed = seed;
    return c;
}

int run_verify(const std::string& config_path, std::uint64_t seed, const std::string& out) {
    if (!config_path.empty())
        std::fprintf(stderr,
                     "note: verify always runs on the built-in normalized defaults; "
                     "--config %s is ignored\n",
                     config_path.c_str());
    const std::filesystem::path scratch =
        std::filesystem::temp_directory_path() / "cntrx-verify";
    const auto results = cntrx::run_acceptance(seed, scratch);

    std::string csv = "criterion,name,passed,seconds,detail\n";
    bool all_passed = true;
    for (const auto& r : results) {
        std::puts(cntrx::format_criterion_line(r).c_str());
        all_passed = all_passed && r.passed;
        std::string detail = r.detail;
        for (char& ch : detail)
            if (ch == ',')
                ch = ';';
        csv += std::to_string(r.id) + "," + r.name + "," + (r.passed ? "1" : "0") + "," +
               cntrx::format_double(r.seconds) + "," + detail + "\n";
    }
    if (!out.empty()) {
        std::ofstream f(out, std::ios::binary | std::ios::trunc);
        if (!f)
            throw cntrx::IoError("cannot open output file: " + out);
        f << csv;
    }
    return all_passed ? kOk : kRuntimeError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cntrx: carbon-nanotube cantilever receiver simulation toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 0;

    auto add_common = [&](CLI::App* cmd, bool out_required) {
        cmd->add_option("--config", config_path, "INI config file (defaults apply if omitted)");
        auto* out = cmd->add_option("--out", out_path, "output CSV path");
        if (out_required)
            out->required();
        cmd->add_option("--seed", seed, "RNG seed (default 0)");
    };

    CLI::App* single = app.add_subcommand("single", "run one scenario, write quantity/value CSV");
    add_common(single, true);
    CLI::App* ber = app.add_subcommand("ber", "Monte Carlo BER campaign over a sigma sweep");
    add_common(ber, true);
    CLI::App* sweep = app.add_subcommand("sweep", "grid sweep over one design axis");
    add_common(sweep, true);
    CLI::App* verify = app.add_subcommand("verify", "run the full verification grid");
    add_common(verify, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kValidationError;
    }

    try {
        if (single->parsed()) {
            cntrx::run_single(resolve_config(config_path, seed), out_path);
            return kOk;
        }
        if (ber->parsed()) {
            cntrx::run_ber(resolve_config(config_path, seed), out_path);
            return kOk;
        }
        if (sweep->parsed()) {
            cntrx::run_sweep(resolve_config(config_path, seed), out_path);
            return kOk;
        }
        return run_verify(config_path, seed, out_path);
    } catch (const cntrx::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kIoError;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kValidationError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kRuntimeError;
    }
}
