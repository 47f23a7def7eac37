#pragma once

#include <cstdint>
#include <random>

#include "wheelq/errors.hpp"

namespace wheelq {

// Seeded generator with a platform-stable draw sequence. The mt19937_64
// output stream is pinned by the standard, and range mapping uses plain
// modulo instead of std::uniform_int_distribution (whose mapping is
// implementation-defined), so the same seed yields the same draws anywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return gen_(); }

    // Uniform draw from [lo, hi], both ends inclusive.
    int next_in_range(int lo, int hi) {
        if (lo > hi) throw DomainError("next_in_range: empty range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(gen_() % span);
    }

    // Uniform draw from [0, 1).
    double next_unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

}  // namespace wheelq
