#pragma once

#include <cstdint>

namespace subvc {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Small deterministic generator (splitmix64 stream).
class Prng {
public:
    explicit Prng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() { return splitmix64(state_); }

    /// Uniform in [0, bound); bound > 0. Unbiased via rejection.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    unsigned __int128 next_u128() {
        unsigned __int128 hi = next();
        return (hi << 64) | next();
    }

    /// Uniform in [0, bound); bound > 0.
    unsigned __int128 below_u128(unsigned __int128 bound) {
        const unsigned __int128 threshold = (static_cast<unsigned __int128>(0) - bound) % bound;
        for (;;) {
            unsigned __int128 r = next_u128();
            if (r >= threshold) return r % bound;
        }
    }

    double next_double() {  // in [0,1)
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

/// Seed source with independent substreams keyed by up to two indices;
/// identical keys give identical streams regardless of creation order.
class RngStream {
public:
    explicit RngStream(std::uint64_t master) : master_(master) {}

    Prng substream(std::uint64_t a) const {
        std::uint64_t s = master_;
        splitmix64(s);
        s ^= 0xA24BAED4963EE407ULL + a;
        splitmix64(s);
        return Prng(s);
    }

    Prng substream(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t s = master_;
        splitmix64(s);
        s ^= 0x9FB21C651E98DF25ULL + a;
        splitmix64(s);
        s ^= 0xE220A8397B1DCDAFULL + b;
        splitmix64(s);
        return Prng(s);
    }

    std::uint64_t master() const { return master_; }

    /// Derived seed for an independent run (trial fan-out).
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t s = seed ^ (0xD6E8FEB86659FD93ULL * (index + 1));
        splitmix64(s);
        return splitmix64(s);
    }

private:
    std::uint64_t master_;
};

}  // namespace subvc
