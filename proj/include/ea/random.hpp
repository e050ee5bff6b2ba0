#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace ea {

/// Seeded 64-bit random stream. Identical seeds yield identical draw
/// sequences, and substreams derived for run r from master seed s are a pure
/// function of (s, r). All distributions are produced from raw 64-bit output
/// in-house so the draw sequence does not depend on the standard library's
/// distribution implementations.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed);

    std::uint64_t seed() const { return seed_; }

    /// Independent stream for substream `index`; pure function of (seed, index).
    RandomStream substream(std::uint64_t index) const;

    /// Seed the substream above would be constructed with.
    static std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t index);

    std::uint64_t next_u64();

    /// Uniform double in [0, 1).
    double uniform01();

    /// Uniform integer in [0, bound). bound must be nonzero.
    std::uint64_t uniform_int(std::uint64_t bound);

    bool bernoulli(double p) { return uniform01() < p; }

    /// Fair coin from a single raw bit.
    int coin() { return static_cast<int>(next_u64() >> 63); }

    /// Box-Muller draw; consumes exactly two uniforms per call.
    double gaussian(double mean, double stddev);

    /// Generator identity, echoed into run output for reproducibility.
    static constexpr std::string_view algorithm_name() { return "mt19937_64/splitmix64"; }

  private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

/// Fisher-Yates shuffle driven by a RandomStream.
template <typename T>
void shuffle(std::vector<T>& values, RandomStream& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.uniform_int(i));
        std::swap(values[i - 1], values[j]);
    }
}

} // namespace ea
