#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <mvml/errors.hpp>

namespace mvml::rng {

/// SplitMix64 step; used to derive well-mixed child seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Child seed for an independent stream (restart index, view index, ...).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(master ^ splitmix64(stream + 1));
}

/// Deterministic random source. mt19937_64 output is bit-exact by the
/// standard; the mappings to doubles, bounded ints and weighted picks are
/// implemented here rather than via std distributions, whose results are
/// implementation-defined.
class Engine {
public:
    explicit Engine(std::uint64_t seed) : gen_(seed) {}

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t uniform_int(std::uint64_t bound) {
        if (bound == 0) throw InvalidParameterError("uniform_int: bound must be positive");
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(gen_()) * bound) >> 64);
    }

    /// Standard normal via Box-Muller; the second value of each pair is cached.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform();  // (0, 1]
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    /// Index drawn with probability proportional to weights[i].
    /// Weights must be non-negative with a positive total.
    std::size_t discrete(const std::vector<double>& weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        if (!(total > 0.0))
            throw InvalidParameterError("discrete: total weight must be positive");
        double target = uniform() * total;
        double cum = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            cum += weights[i];
            if (target < cum) return i;
        }
        // Round-off fell past the last positive weight.
        for (std::size_t i = weights.size(); i-- > 0;) {
            if (weights[i] > 0.0) return i;
        }
        return weights.size() - 1;
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace mvml::rng
