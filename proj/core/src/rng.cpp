#include "entanglecert/rng.hpp"

#include <cmath>
#include <numbers>

namespace entanglecert {

namespace {

inline std::uint64_t rotl64(std::uint64_t x, int r) {
    return (x << r) | (x >> (64 - r));
}

constexpr std::uint64_t kParity = 0x1BD11BDAA9FC1A22ULL;
constexpr int kRotations[8] = {16, 42, 12, 31, 16, 32, 24, 21};

}  // namespace

std::array<std::uint64_t, 2> threefry2x64(const std::array<std::uint64_t, 2>& key,
                                          const std::array<std::uint64_t, 2>& counter) {
    const std::uint64_t ks[3] = {key[0], key[1], kParity ^ key[0] ^ key[1]};
    std::uint64_t x0 = counter[0] + ks[0];
    std::uint64_t x1 = counter[1] + ks[1];
    for (int round = 0; round < 20; ++round) {
        x0 += x1;
        x1 = rotl64(x1, kRotations[round & 7]);
        x1 ^= x0;
        if ((round & 3) == 3) {
            const int s = round / 4 + 1;
            x0 += ks[s % 3];
            x1 += ks[(s + 1) % 3] + static_cast<std::uint64_t>(s);
        }
    }
    return {x0, x1};
}

std::uint64_t RngStream::next_u64() {
    // Draw counters live in the (.., 0) counter namespace; splits use (.., 1).
    const auto block = threefry2x64({seed_, stream_}, {counter_++, 0});
    return block[0];
}

double RngStream::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_open_double() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RngStream::next_normal() {
    const double u1 = next_open_double();
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

RngStream RngStream::split(std::uint64_t index) const {
    const auto block = threefry2x64({seed_, stream_}, {index, 1});
    return {seed_, block[0]};
}

}  // namespace entanglecert
