#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

namespace probeboost {

using Seed = std::uint64_t;

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Derives an independent stream seed from a root seed and a path of stream
// identifiers, e.g. derive_seed(seed, {replicate, column}). Deterministic and
// independent of thread scheduling.
Seed derive_seed(Seed root, std::initializer_list<std::uint64_t> path) noexcept;

// All randomness in the library flows through Rng: a std::mt19937_64 engine
// (whose output sequence is fixed by the C++ standard) plus hand-written
// sampling routines, so draws are identical across standard libraries.
class Rng {
public:
    explicit Rng(Seed seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform01();

    // Uniform on the open interval (lo, hi).
    double uniform_open(double lo, double hi);

    // Uniform integer on [0, bound), bound > 0. Lemire's nearly-divisionless
    // rejection method; unbiased.
    std::uint64_t below(std::uint64_t bound);

    // Standard normal via the Marsaglia polar method; the spare deviate is
    // cached.
    double normal();

    bool bernoulli(double prob) { return uniform01() < prob; }

    template <typename T>
    void shuffle(std::span<T> values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            const auto k = static_cast<std::size_t>(below(i));
            std::swap(values[i - 1], values[k]);
        }
    }

    // k distinct indices drawn uniformly from [0, n), returned sorted.
    std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace probeboost
