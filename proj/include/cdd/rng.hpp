#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace cdd {

/// Deterministic random source. Every consumer receives an explicit handle;
/// parallel work derives one substream per trial from (master seed, stream
/// index) so results do not depend on the worker count.
///
/// Gaussians come from a stateless Box-Muller transform rather than
/// std::normal_distribution, which keeps the draw sequence a pure function
/// of the engine state.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    static Rng substream(uint64_t master, uint64_t stream)
    {
        return Rng(mix(mix(master) ^ mix(stream + 0x632be59bd9b4e019ULL)));
    }

    /// Uniform in [0, 1).
    double uniform()
    {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n).
    int uniform_int(int n)
    {
        int v = static_cast<int>(uniform() * n);
        return v < n ? v : n - 1;
    }

    /// Standard normal.
    double gauss()
    {
        const double r = std::sqrt(-2.0 * std::log1p(-uniform()));
        return r * std::cos(2.0 * M_PI * uniform());
    }

    /// Circularly symmetric complex normal CN(0,1): independent real and
    /// imaginary parts, variance 1/2 each.
    std::complex<double> cnormal()
    {
        const double r = std::sqrt(-std::log1p(-uniform()));
        const double phi = 2.0 * M_PI * uniform();
        return {r * std::cos(phi), r * std::sin(phi)};
    }

private:
    static uint64_t mix(uint64_t x)
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::mt19937_64 eng_;
};

} // namespace cdd
