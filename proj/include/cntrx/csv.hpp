#pragma once

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cntrx {

// Errors that should map to the I/O exit code rather than the generic one.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shortest decimal representation that round-trips to the same double.
// All CSV and manifest output goes through here so reruns are byte-identical.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string format_u64(std::uint64_t v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace cntrx
