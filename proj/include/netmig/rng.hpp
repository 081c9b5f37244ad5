#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace netmig::rng {

// Purpose tags used to derive independent substreams from one base seed.
// Streams keyed by (seed, purpose, ...) never overlap across purposes.
enum Purpose : std::uint64_t {
    kTopology = 1,
    kArrivals = 2,
    kSweepOrder = 3,
    kRoutePick = 4,
    kEstimate = 5,
    kProfile = 6,
    kReplica = 7,
};

std::uint64_t splitmix64(std::uint64_t& state);

// Key combiners: mix(seed, k...) gives the seed of a derived substream.
std::uint64_t mix(std::uint64_t a, std::uint64_t b);
std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c);
std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d);

// Small deterministic generator. Cheap to construct, so substreams can be
// derived per (purpose, step, island, ...) key without carrying state around.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64(state_); }

    // Uniform in [0,1).
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in [0,n). Rejection sampling keeps it exactly uniform.
    std::size_t uniform_index(std::size_t n);

    bool bernoulli(double p) { return next_unit() < p; }

    // Knuth's product method; large rates are split using Poisson additivity.
    int poisson(double lambda);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = uniform_index(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace netmig::rng
