/* rng.hpp
 *
 * Seeded, streamed random numbers for scenario generation. The core is
 * xoshiro256** with its state filled by a splitmix64 chain derived from
 * (seed, stream), so any (seed, stream) pair names one reproducible draw
 * sequence and parallel trials can take disjoint streams from one base seed.
 * Not shareable across threads; give each trial its own instance.
 */
#pragma once

#include <cstdint>

namespace mimogames {

// Generator identifier embedded in every output file so runs are
// self-describing; bump when the draw sequence would change.
inline constexpr const char* kRngAlgorithm = "xoshiro256** + splitmix64 stream derivation, v1";

class Rng {
  public:
    Rng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();

    // uniform in [0, 1) with 53 random bits
    double uniform();
    // uniform in [lo, hi)
    double uniform(double lo, double hi);
    // Rayleigh with scale sigma (mean sigma sqrt(pi/2))
    double rayleigh(double sigma);
    // standard normal via Box-Muller (second value cached)
    double gaussian();

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

  private:
    std::uint64_t s_[4];
    std::uint64_t seed_;
    std::uint64_t stream_;
    double cached_gauss_ = 0.0;
    bool has_cached_gauss_ = false;
};

}  // namespace mimogames
