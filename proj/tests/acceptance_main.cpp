// Verification suite runner: one pass/fail line per criterion, nonzero exit
// if anything failed. `--criterion N` runs a single criterion.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>

#include "cntrx/verify.hpp"

int main(int argc, char** argv) {
    std::uint64_t seed = 20250801;
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
            seed = std::strtoull(argv[++i], nullptr, 10);
        } else {
            std::fprintf(stderr, "usage: %s [--criterion N] [--seed S]\n", argv[0]);
            return 2;
        }
    }

    const std::filesystem::path scratch =
        std::filesystem::temp_directory_path() / "cntrx-acceptance";

    int failures = 0;
    try {
        if (only != 0) {
            const auto r = cntrx::run_criterion(only, seed, scratch);
            std::puts(cntrx::format_criterion_line(r).c_str());
            failures = r.passed ? 0 : 1;
        } else {
            for (const auto& r : cntrx::run_acceptance(seed, scratch)) {
                std::puts(cntrx::format_criterion_line(r).c_str());
                if (!r.passed)
                    ++failures;
            }
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "fatal: %s\n", e.what());
        return 2;
    }
    if (failures > 0)
        std::fprintf(stderr, "%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
