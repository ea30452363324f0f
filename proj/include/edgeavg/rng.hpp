#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace edgeavg {

// Counter-free random stream used everywhere in the simulator. xoshiro256++
// with splitmix64 seeding: fixed output sequence for a given seed on every
// platform, which is what makes reruns byte-identical. Distributions are
// implemented here (inverse CDF, Lemire bounded ints, PTRS Poisson) instead
// of <random> because libstdc++ does not pin down distribution output.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0,1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on the open interval (0,1); safe to pass to log().
  double uniform01_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Exponential(rate) by inverse CDF; strictly positive.
  double exponential(double rate) { return -std::log(uniform01_open()) / rate; }

  // Uniform integer in [0, n). Lemire's multiply-shift with the rejection
  // step, so the result is exactly uniform.
  std::uint64_t below(std::uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      const std::uint64_t threshold = -n % n;
      while (lo < threshold) {
        m = static_cast<unsigned __int128>(next_u64()) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  bool bernoulli(double p) { return uniform01() < p; }

  // Exact Poisson(mean) count. Multiplication method below the PTRS cutover,
  // Hormann's transformed rejection above it.
  std::uint64_t poisson(double mean);

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t poisson_ptrs(double mean);

  std::array<std::uint64_t, 4> state_;
};

// Deterministic stream splitting: statistically independent streams for
// distinct (seed, replica, salt) triples. The salt separates streams that
// must be independent within one replica (e.g. clock rings vs. opinions).
RandomStream split_stream(std::uint64_t seed, std::uint64_t replica,
                          std::uint64_t salt = 0);

}  // namespace edgeavg
