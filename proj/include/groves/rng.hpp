#pragma once

#include <gmpxx.h>

#include <cstdint>

#include "groves/rational.hpp"

namespace groves {

using u128 = unsigned __int128;

// Counter-based stream: the n-th output is the SplitMix64 finalizer applied to
// seed + n * golden, so any position can be regenerated from (seed, n) alone.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed = 0) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t position() const { return counter_; }

    std::uint64_t next64() {
        std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    u128 next128() {
        const u128 hi = next64();
        return (hi << 64) | next64();
    }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

// ceil(q * 2^128) for 0 <= q < 1, as a 128-bit integer.
inline u128 probability_threshold(const Rational& q) {
    if (q < 0 || q >= 1) throw InvalidArgument("threshold needs a probability in [0, 1)");
    mpz_class scaled = q.get_num();
    scaled <<= 128;
    mpz_class t;
    mpz_cdiv_q(t.get_mpz_t(), scaled.get_mpz_t(), q.get_den_mpz_t());
    const mpz_class lo = t & mpz_class("18446744073709551615");
    const mpz_class hi = t >> 64;
    return (static_cast<u128>(hi.get_ui()) << 64) | lo.get_ui();
}

// A three-way draw: outcome 0 with probability U, 1 with V, 2 with W = 1 - U - V.
// A uniform 128-bit integer r selects 0 when r < ceil(U 2^128), 1 when r < ceil((U+V) 2^128).
struct ThreeWayDraw {
    u128 first = 0, second = 0;

    ThreeWayDraw() = default;
    ThreeWayDraw(const Rational& U, const Rational& V)
        : first(probability_threshold(U)), second(probability_threshold(U + V)) {}

    int operator()(RngStream& rng) const {
        const u128 r = rng.next128();
        return r < first ? 0 : r < second ? 1 : 2;
    }
};

}  // namespace groves
