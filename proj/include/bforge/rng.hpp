#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace bforge {

// SplitMix64 (Steele, Lea, Flood 2014). Pinned here so that splits, sampling
// and shuffles are reproducible bit-for-bit across platforms and language
// ports; std::uniform_int_distribution makes no such guarantee.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1) with 53 bits of mantissa.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Unbiased integer in [0, n) by rejection sampling.
    std::uint64_t next_below(std::uint64_t n) {
        if (n == 0) return 0;
        const std::uint64_t threshold = (0ULL - n) % n;  // 2^64 mod n
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    // Fisher-Yates, back to front.
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

    std::uint64_t state() const { return state_; }
    void set_state(std::uint64_t s) { state_ = s; }

  private:
    std::uint64_t state_;
};

// FNV-1a, used only to derive independent per-phase seeds from one run seed.
inline std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (const char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

// Phase streams ("planning", "collecting", "mcts") never share state, so
// adding calls in one phase cannot shift another phase's draws.
inline std::uint64_t derive_seed(std::uint64_t base_seed, std::string_view phase) {
    return SplitMix64(base_seed ^ fnv1a64(phase)).next_u64();
}

}  // namespace bforge
