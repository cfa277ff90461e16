#pragma once

#include <bit>
#include <cstdint>
#include <random>

namespace subldpc {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic random stream. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard, so seeded runs are byte-reproducible
/// across platforms. Derived streams (see stream()) let independent workers
/// draw without sharing state: stream k of master seed s is seeded with
/// splitmix64(splitmix64(s) + k), which decorrelates nearby seeds/indices.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed)) {}

    static Rng stream(std::uint64_t master_seed, std::uint64_t index) {
        return Rng(splitmix64(master_seed) + index);
    }

    std::uint64_t next() { return gen_(); }

    /// Unbiased uniform draw from {0, ..., n-1} by masked rejection.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t mask = std::bit_ceil(n) - 1;
        for (;;) {
            const std::uint64_t r = gen_() & mask;
            if (r < n) return r;
        }
    }

    std::uint32_t field_element(std::uint32_t q) {
        return static_cast<std::uint32_t>(below(q));
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace subldpc
