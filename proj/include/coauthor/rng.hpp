// Reproducible random streams for replications.
//
// A stream is keyed by (master_seed, replication_index). The key is hashed
// through SplitMix64 into a xoshiro256** state, so any replication can be
// started without touching the others. Distributions are implemented here
// rather than taken from <random> because the standard leaves their
// algorithms unspecified, and outputs must match across toolchains.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>

namespace coauthor {

struct SeedPolicy {
    std::uint64_t master_seed = 0;
    std::uint64_t replication_index = 0;
};

constexpr std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(SeedPolicy seed) {
        std::uint64_t key = seed.master_seed;
        const std::uint64_t mixed_master = splitmix64(key);
        std::uint64_t sm = mixed_master ^ (seed.replication_index * 0xd1b54a32d192ed03ULL);
        for (auto& word : state_) word = splitmix64(sm);
    }

    explicit RandomStream(std::uint64_t master_seed, std::uint64_t replication_index = 0)
        : RandomStream(SeedPolicy{master_seed, replication_index}) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi]; returns lo when the interval is degenerate.
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer on [lo, hi], unbiased by rejection.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>((*this)());
        const std::uint64_t limit = max() - max() % span;
        std::uint64_t draw;
        do {
            draw = (*this)();
        } while (draw >= limit);
        return lo + static_cast<std::int64_t>(draw % span);
    }

    /// Marsaglia polar method; one normal per call, the partner is discarded.
    double normal(double mean, double stddev) {
        if (stddev == 0.0) return mean;
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        return mean + stddev * u * std::sqrt(-2.0 * std::log(s) / s);
    }

    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(i) - 1));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4]{};
};

}  // namespace coauthor
