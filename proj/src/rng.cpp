#include "ideoforge/rng.hpp"

#include <stdexcept>

#ifdef __SIZEOF_INT128__
using uint128 = unsigned __int128;
#endif

namespace ideoforge {

uint64_t Rng::next_u64() {
    // splitmix64 (Steele et al.), public-domain reference constants.
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

uint64_t Rng::uniform(uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::uniform: n must be > 0");
    // Lemire's nearly-divisionless bounded draw; unbiased and portable.
    uint128 m = static_cast<uint128>(next_u64()) * static_cast<uint128>(n);
    uint64_t lo = static_cast<uint64_t>(m);
    if (lo < n) {
        uint64_t threshold = (0 - n) % n;
        while (lo < threshold) {
            m = static_cast<uint128>(next_u64()) * static_cast<uint128>(n);
            lo = static_cast<uint64_t>(m);
        }
    }
    return static_cast<uint64_t>(m >> 64);
}

double Rng::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::vector<size_t> Rng::sample_without_replacement(size_t n, size_t k) {
    if (k > n) throw std::invalid_argument("sample_without_replacement: k > n");
    // Partial Fisher-Yates over an index vector.
    std::vector<size_t> idx(n);
    for (size_t i = 0; i < n; ++i) idx[i] = i;
    std::vector<size_t> out;
    out.reserve(k);
    for (size_t i = 0; i < k; ++i) {
        size_t j = i + static_cast<size_t>(uniform(n - i));
        std::swap(idx[i], idx[j]);
        out.push_back(idx[i]);
    }
    return out;
}

uint64_t fnv1a64(std::string_view data, uint64_t seed) {
    uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string to_hex(uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<size_t>(i)] = digits[value & 0xf];
        value >>= 4;
    }
    return out;
}

}  // namespace ideoforge
