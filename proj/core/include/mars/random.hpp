#pragma once

#include <cstdint>
#include <random>

namespace mars {

/// Portable uniform generator: std::mt19937_64 (fully specified by the
/// standard), with doubles formed from the top 53 bits of each draw.
/// Unlike std::uniform_real_distribution the output is identical across
/// standard libraries.
class PortableRandom {
public:
    static constexpr const char* kAlgorithm = "mt19937_64; u = (draw >> 11) * 2^-53; value = lo + (hi - lo) * u";

    explicit PortableRandom(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform();
    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace mars
