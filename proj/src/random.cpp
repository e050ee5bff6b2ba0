#include "ea/random.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace ea {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

} // namespace

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed), gen_(splitmix64(seed)) {}

std::uint64_t RandomStream::substream_seed(std::uint64_t master_seed, std::uint64_t index) {
    return splitmix64(master_seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

RandomStream RandomStream::substream(std::uint64_t index) const {
    return RandomStream(substream_seed(seed_, index));
}

std::uint64_t RandomStream::next_u64() { return gen_(); }

double RandomStream::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RandomStream::uniform_int(std::uint64_t bound) {
    if (bound == 0)
        throw std::invalid_argument("uniform_int: bound must be nonzero");
    const std::uint64_t mask = std::bit_ceil(bound) - 1;
    for (;;) {
        std::uint64_t x = next_u64() & mask;
        if (x < bound)
            return x;
    }
}

double RandomStream::gaussian(double mean, double stddev) {
    // u1 in (0, 1] so the log is finite.
    double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    double u2 = uniform01();
    double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    return mean + stddev * z;
}

} // namespace ea
