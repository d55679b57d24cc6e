#pragma once

// Deterministic randomness. One master seed fans out into named substreams
// (hashed with FNV-1a and mixed through SplitMix64), so independent modules
// and independent sample indices draw from independent, reproducible
// streams. Distribution mapping is hand-rolled on top of mt19937_64 because
// std::uniform_real_distribution is implementation-defined and the file
// formats must be byte-stable.

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace mecoff {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t hash_name(std::string_view name) {
    uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (char c : name) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Derive a substream seed from (master seed, stream name, indices).
inline uint64_t derive_seed(uint64_t master, std::string_view stream, uint64_t index = 0,
                            uint64_t subindex = 0) {
    uint64_t s = splitmix64(master ^ hash_name(stream));
    s = splitmix64(s ^ index);
    return splitmix64(s ^ subindex);
}

class Rng {
  public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    // Uniform in [0,1) with 53 random bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    // Log-uniform over [lo, hi], lo > 0.
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    // Uniform integer in [0, n), unbiased by rejection.
    uint64_t uniform_int(uint64_t n) {
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    // Fisher-Yates; std::shuffle is implementation-defined.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            const size_t j = static_cast<size_t>(uniform_int(i));
            std::swap(v[i - 1], v[j]);
        }
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace mecoff
