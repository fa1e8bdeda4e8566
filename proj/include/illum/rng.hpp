// Copyright (c) 2026 The illum toolchain developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ILLUM_RNG_HPP
#define ILLUM_RNG_HPP

#include <vector>

#include "illum/common.hpp"

namespace illum {

// Deterministic splitmix64 stream. The standard distributions are not
// specified bit-for-bit across library implementations, so seeded scenarios
// sample through this instead; the same seed replays the same run anywhere.
class Rng {
public:
    explicit Rng(u64 seed) : state_(seed) {}

    u64 next() {
        u64 z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound); bound = 0 returns 0.
    u64 below(u64 bound) { return bound == 0 ? 0 : next() % bound; }

    // Uniform in [lo, hi] inclusive.
    i64 range(i64 lo, i64 hi) {
        if (lo >= hi) return lo;
        return lo + static_cast<i64>(below(static_cast<u64>(hi - lo) + 1));
    }

    bool chance(u64 num, u64 den) { return below(den) < num; }

    template <typename T>
    const T& pick(const std::vector<T>& items) {
        if (items.empty()) die("Rng::pick on empty vector");
        return items[static_cast<size_t>(below(items.size()))];
    }

    // Independent child stream; lets sub-tasks draw without perturbing the
    // parent sequence.
    Rng fork() { return Rng(next() ^ 0xa5a5a5a5deadbeefull); }

private:
    u64 state_;
};

} // namespace illum

#endif // ILLUM_RNG_HPP
