#pragma once

#include <cstdint>
#include <random>

namespace ipdsaw {

// Seeded 64-bit engine. uniform() is built from raw bits so a seed gives
// the same stream on every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Independent stream number `stream` derived from a master seed.
    static Rng stream(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t bits() { return engine_(); }

    // Uniform on the open interval (0, 1).
    double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

    // Uniform integer in [0, n); throws std::invalid_argument for n = 0.
    std::uint64_t below(std::uint64_t n);

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace ipdsaw
