#pragma once

#include <cstdint>
#include <random>

#include "rassim/types.hpp"

namespace rassim {

/// splitmix64 finalizer; the basis of the documented stream-splitting rule.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Stream-splitting rule: stream_seed = hash64(master_seed, trial_index),
/// and role substreams hash64(trial_seed, role). Trials and roles never share
/// a stream, so per-trial results depend only on (master_seed, trial_index).
inline std::uint64_t hash64(std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(a) ^ (b + 0x9e3779b97f4a7c15ULL));
}

/// Independent random draws within a trial, one stream per role so a change
/// in one component's draw count never shifts another's.
enum class StreamRole : std::uint64_t { kSwitch = 1, kJamWave = 2, kNoise = 3 };

/// Seeded RNG with pinned distribution mappings. The engine is mt19937_64;
/// uniform/Gaussian/Bernoulli draws are implemented here rather than with
/// std distributions, whose output sequences are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    /// Standard normal via Box-Muller; one pair of uniforms per pair of draws.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1] so the log is finite
        const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * kPi * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * kPi * u2);
    }

    /// Circularly-symmetric complex Gaussian, zero mean, E|z|^2 = variance.
    cplx cnormal(double variance) {
        const double s = std::sqrt(variance * 0.5);
        const double re = s * gaussian();
        const double im = s * gaussian();
        return {re, im};
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

inline Rng trial_stream(std::uint64_t master_seed, std::uint64_t trial_index, StreamRole role) {
    return Rng(hash64(hash64(master_seed, trial_index), static_cast<std::uint64_t>(role)));
}

}  // namespace rassim
