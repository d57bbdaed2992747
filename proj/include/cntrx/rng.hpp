#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

// Counter-based random streams.
//
// Every draw is a pure function of (seed, stream, index), so draws are
// independent of call order and parallel consumers can partition index
// ranges with no shared state. The construction is the SplitMix64 output
// function applied twice:
//
//   base          = mix64(seed ^ 0x243f6a8885a308d3 ^ stream * 0x9e3779b97f4a7c15)
//   u64(index)    = mix64(base + index * 0x9e3779b97f4a7c15)
//   uniform       = (u64 >> 11) * 2^-53                      in [0, 1)
//   gaussian      = sqrt(-2 ln u1) * cos(2 pi u2)            (Box-Muller)
//     with u1 from counter 2*index (shifted into (0, 1]) and
//          u2 from counter 2*index + 1
//
// mix64 is the SplitMix64 finalizer (Steele, Lea, Flood 2014). Gaussian draws
// therefore consume counters {2i, 2i+1} of their stream; anything else must
// use its own stream id. This contract is frozen: the acceptance suite and all
// CSV reproducibility guarantees depend on it.

namespace cntrx {

inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

inline std::uint64_t counter_u64(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    const std::uint64_t base =
        mix64(seed ^ 0x243f6a8885a308d3ULL ^ stream * 0x9e3779b97f4a7c15ULL);
    return mix64(base + index * 0x9e3779b97f4a7c15ULL);
}

// Uniform double in [0, 1) with 53-bit resolution.
inline double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    return static_cast<double>(counter_u64(seed, stream, index) >> 11) * 0x1.0p-53;
}

// Standard normal draw, deterministic per (seed, stream, index).
inline double counter_gaussian(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    const std::uint64_t a = counter_u64(seed, stream, 2 * index);
    const std::uint64_t b = counter_u64(seed, stream, 2 * index + 1);
    const double u1 = static_cast<double>((a >> 11) + 1) * 0x1.0p-53;  // (0, 1], log-safe
    const double u2 = static_cast<double>(b >> 11) * 0x1.0p-53;        // [0, 1)
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Stream ids used by the toolkit. New consumers take new ids.
namespace rng_stream {
inline constexpr std::uint64_t noise = 1;         // one gaussian per demodulated symbol
inline constexpr std::uint64_t noise_path = 2;    // per-step increments of the path model
inline constexpr std::uint64_t symbols = 3;       // transmitted bits in BER campaigns
}  // namespace rng_stream

}  // namespace cntrx
