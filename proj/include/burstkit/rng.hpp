#pragma once

// Portable, bit-stable random streams. The engine is std::mt19937_64, whose
// output sequence is fixed by the standard; the conversion to doubles is done
// here rather than through <random> distributions, which are not portable.
//
// Stream derivation: replica r of a run seeded with s uses
//   derive_stream_seed(s, r) = splitmix64(s ^ splitmix64(r + 0x9E3779B97F4A7C15)).
// An Rng constructed from seed x seeds the engine with splitmix64(x).

#include <cmath>
#include <cstdint>
#include <random>

namespace burstkit {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream + 0x9E3779B97F4A7C15ULL));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    // Uniform on [0, 1) with 53 random mantissa bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1].
    double uniform_open_closed() { return 1.0 - uniform(); }

    double exponential(double rate) { return -std::log(uniform_open_closed()) / rate; }

private:
    std::mt19937_64 engine_;
};

}  // namespace burstkit
