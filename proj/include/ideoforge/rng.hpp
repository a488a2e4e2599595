#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace ideoforge {

// Deterministic PRNG with platform-independent derived draws.
// std::uniform_int_distribution is implementation-defined, so every sampling
// decision that must reproduce byte-identically goes through this wrapper
// (splitmix64 core, Lemire bounded draw).
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64();

    // Uniform in [0, n); n must be > 0.
    uint64_t uniform(uint64_t n);

    // Uniform double in [0, 1) with 53 bits of precision.
    double uniform01();

    // k distinct indices drawn uniformly from [0, n), in draw order.
    std::vector<size_t> sample_without_replacement(size_t n, size_t k);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(uniform(i));
            using std::swap;
            swap(v[i - 1], v[j]);
        }
    }

private:
    uint64_t state_;
};

// FNV-1a 64-bit; used for content-addressed ids and mock keying.
uint64_t fnv1a64(std::string_view data, uint64_t seed = 0xcbf29ce484222325ULL);

// Fixed-width lowercase hex.
std::string to_hex(uint64_t value);

}  // namespace ideoforge
