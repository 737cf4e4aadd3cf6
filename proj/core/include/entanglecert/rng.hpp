#pragma once

#include <array>
#include <cstdint>

namespace entanglecert {

/// Threefry-2x64 block function, 20 rounds. Deterministic across platforms.
std::array<std::uint64_t, 2> threefry2x64(const std::array<std::uint64_t, 2>& key,
                                          const std::array<std::uint64_t, 2>& counter);

/// Counter-based random stream keyed by (seed, stream index). The n-th draw
/// is a pure function of (seed, stream, n), so identical triples reproduce
/// identical values regardless of execution order or thread schedule.
/// Distinct Monte Carlo units must use distinct stream indices; split()
/// derives child stream indices deterministically through a counter
/// namespace disjoint from the draws.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

    std::uint64_t next_u64();

    /// Uniform double in [0, 1), 53-bit resolution.
    double next_double();

    /// Uniform double in (0, 1]; safe as a log() argument.
    double next_open_double();

    /// Standard normal via Box-Muller; consumes exactly two draws.
    double next_normal();

    /// Child stream for sub-unit `index`; independent of draw position.
    RngStream split(std::uint64_t index) const;

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }
    std::uint64_t draws() const { return counter_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
};

}  // namespace entanglecert
