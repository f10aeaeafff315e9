#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <vector>

namespace sdnc {

// Counter-based RNG: every draw is a pure hash of (key, counter), so streams
// keyed by (seed, purpose, ids...) produce the same values no matter which
// thread or in which order they are evaluated.
class Rng {
  public:
    Rng() = default;
    explicit Rng(uint64_t key) : key_(key) {}

    static uint64_t mix(uint64_t x) {
        // splitmix64 finalizer
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    static Rng keyed(uint64_t seed, std::initializer_list<uint64_t> stream) {
        uint64_t k = mix(seed);
        for (uint64_t s : stream) k = mix(k ^ mix(s + 0x632be59bd9b4e019ull));
        return Rng(k);
    }

    uint64_t bits(uint64_t counter) const { return mix(key_ ^ mix(counter)); }

    // uniform in [0, 1)
    double uniform(uint64_t counter) const {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

    double uniform(uint64_t counter, double lo, double hi) const {
        return lo + (hi - lo) * uniform(counter);
    }

    // uniform integer in [0, n)
    uint64_t pick(uint64_t counter, uint64_t n) const {
        // 128-bit multiply avoids modulo bias well below any tolerance we test
        unsigned __int128 wide = static_cast<unsigned __int128>(bits(counter)) * n;
        return static_cast<uint64_t>(wide >> 64);
    }

    bool bernoulli(uint64_t counter, double p) const { return uniform(counter) < p; }

    // standard normal via Box-Muller; one draw consumes two counters internally
    double gaussian(uint64_t counter) const {
        double u1 = (static_cast<double>(bits(counter * 2) >> 11) + 1.0) * 0x1.0p-53;  // (0,1]
        double u2 = uniform(counter * 2 + 1);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    std::vector<double> gaussians(uint64_t counter_base, size_t n) const {
        std::vector<double> out(n);
        for (size_t i = 0; i < n; ++i) out[i] = gaussian(counter_base + i);
        return out;
    }

    // Fisher-Yates permutation of [0, n), counters [counter_base, counter_base+n)
    std::vector<size_t> permutation(uint64_t counter_base, size_t n) const {
        std::vector<size_t> p(n);
        for (size_t i = 0; i < n; ++i) p[i] = i;
        for (size_t i = n; i > 1; --i) {
            size_t j = static_cast<size_t>(pick(counter_base + i, i));
            std::swap(p[i - 1], p[j]);
        }
        return p;
    }

    uint64_t key() const { return key_; }

  private:
    uint64_t key_ = 0;
};

// Stream tags keep independent consumers of one seed from colliding.
namespace stream {
inline constexpr uint64_t meeting_struct = 1;
inline constexpr uint64_t meeting_words = 2;
inline constexpr uint64_t prototypes = 3;
inline constexpr uint64_t embed_noise_vad = 4;
inline constexpr uint64_t embed_noise_fs = 5;
inline constexpr uint64_t sot = 6;
inline constexpr uint64_t asr = 7;
inline constexpr uint64_t rotation = 8;
inline constexpr uint64_t shuffle = 9;
inline constexpr uint64_t init = 10;
inline constexpr uint64_t train_order = 11;
inline constexpr uint64_t kmeans = 12;
inline constexpr uint64_t dropout = 13;
}  // namespace stream

}  // namespace sdnc
