#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rebact {

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);
std::vector<std::string> split_ws(std::string_view s);

/// Split on a separator string, keeping empty pieces.
std::vector<std::string> split(std::string_view s, std::string_view sep);

std::string join(const std::vector<std::string> &parts, std::string_view sep);

bool starts_with_ci(std::string_view s, std::string_view prefix);

/// Hex-encoded SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

/// Round half away from zero to two decimals and format as "%.2f".
std::string format_2dp(double x);

/// Deterministic RNG (splitmix64). Identical across platforms and
/// standard libraries, unlike std::uniform_int_distribution.
struct DetRng {
    std::uint64_t state;

    explicit DetRng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, n). n must be > 0.
    std::uint32_t below(std::uint32_t n) {
        return static_cast<std::uint32_t>(next() % n);
    }

    /// Uniform integer in [lo, hi] inclusive.
    int range(int lo, int hi) {
        return lo + static_cast<int>(below(static_cast<std::uint32_t>(hi - lo + 1)));
    }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0);
    }

    bool chance(double p) { return uniform() < p; }

    template <typename T>
    void shuffle(std::vector<T> &v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = below(static_cast<std::uint32_t>(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    template <typename T>
    const T &pick(const std::vector<T> &v) {
        return v[below(static_cast<std::uint32_t>(v.size()))];
    }
};

/// Combine two seeds into one (order-sensitive).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

} // namespace rebact
