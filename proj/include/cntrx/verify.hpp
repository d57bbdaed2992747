#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace cntrx {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

inline constexpr int kCriterionCount = 9;

// Run one verification criterion (1-based). scratch is used for criteria that
// exercise file output; it is created if missing.
CriterionResult run_criterion(int id, std::uint64_t seed, const std::filesystem::path& scratch);

// All criteria in order.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed,
                                            const std::filesystem::path& scratch);

// "[3/9] PASS name  detail  (1.23 s)"
std::string format_criterion_line(const CriterionResult& r);

}  // namespace cntrx
