#include "probeboost/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace probeboost {

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Seed derive_seed(Seed root, std::initializer_list<std::uint64_t> path) noexcept {
    std::uint64_t h = mix64(root);
    for (const auto id : path) {
        h = mix64(h ^ mix64(id + 0x632be59bd9b4e019ULL));
    }
    return h;
}

double Rng::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform_open(double lo, double hi) {
    double u = 0.0;
    do {
        u = uniform01();
    } while (u == 0.0);
    return lo + (hi - lo) * u;
}

std::uint64_t Rng::below(std::uint64_t bound) {
    auto x = engine_();
    auto m = static_cast<unsigned __int128>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            x = engine_();
            m = static_cast<unsigned __int128>(x) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * scale;
    has_spare_ = true;
    return u * scale;
}

std::vector<std::size_t> Rng::sample_without_replacement(std::size_t n, std::size_t k) {
    if (k > n) {
        throw std::invalid_argument("cannot sample " + std::to_string(k) + " of " + std::to_string(n));
    }
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    // partial Fisher-Yates over the first k slots
    for (std::size_t i = 0; i < k; ++i) {
        const auto r = i + static_cast<std::size_t>(below(n - i));
        std::swap(pool[i], pool[r]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace probeboost
