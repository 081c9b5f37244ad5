#include "netmig/rng.hpp"

#include <cmath>
#include <limits>

namespace netmig::rng {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a;
    splitmix64(s);
    s ^= b + 0x9e3779b97f4a7c15ull + (s << 6) + (s >> 2);
    return splitmix64(s);
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix(mix(a, b), c);
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                  std::uint64_t d) {
    return mix(mix(mix(a, b), c), d);
}

std::size_t Stream::uniform_index(std::size_t n) {
    if (n < 2) return 0;
    // Reject draws from the tail that would bias the modulus.
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % static_cast<std::uint64_t>(n);
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return static_cast<std::size_t>(x % static_cast<std::uint64_t>(n));
}

int Stream::poisson(double lambda) {
    if (!(lambda > 0.0)) return 0;
    int count = 0;
    // Poisson(a + b) = Poisson(a) + Poisson(b); keep exp(-lambda) away from 0.
    while (lambda > 20.0) {
        lambda -= 20.0;
        const double chunk_limit = std::exp(-20.0);
        double prod = next_unit();
        while (prod > chunk_limit) {
            ++count;
            prod *= next_unit();
        }
    }
    const double limit = std::exp(-lambda);
    double prod = next_unit();
    while (prod > limit) {
        ++count;
        prod *= next_unit();
    }
    return count;
}

}  // namespace netmig::rng
