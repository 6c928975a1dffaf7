#pragma once

/**
 * Seedable, splittable 64-bit random number generation.
 *
 * The engine is xoshiro256** (Blackman & Vigna). Independent streams are
 * derived from a master seed and a stream index:
 *
 *   state = SplitMix64 sequence started at  mix(master) ^ mix(stream + phi)
 *
 * where mix is the SplitMix64 finaliser and phi = 0x9E3779B97F4A7C15. Every
 * Monte Carlo driver in this library gives sample i its own stream (master, i),
 * so results never depend on the number of worker threads, and growing a
 * batch leaves the earlier samples untouched.
 */

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

namespace lci {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}
  constexpr std::uint64_t next() noexcept {
    state_ += kGoldenGamma;
    return splitmix64_mix(state_);
  }

 private:
  std::uint64_t state_;
};

/// Seed of stream `stream` of master seed `master`.
constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream) noexcept {
  return splitmix64_mix(master) ^ splitmix64_mix(stream + kGoldenGamma);
}

class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0) noexcept { reseed(seed); }

  /// Stream `stream` of master seed `master`.
  static Rng for_stream(std::uint64_t master, std::uint64_t stream) noexcept {
    return Rng(stream_seed(master, stream));
  }

  void reseed(std::uint64_t seed) noexcept {
    SplitMix64 sm(seed);
    for (auto& word : s_) word = sm.next();
    has_spare_normal_ = false;
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept { return next_u64(); }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_open0() noexcept { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

  /// Unbiased integer in [0, bound) (Lemire's multiply-and-reject). bound > 0.
  std::uint64_t uniform_below(std::uint64_t bound) noexcept {
    std::uint64_t x = next_u64();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = next_u64();
        m = static_cast<__uint128_t>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Standard normal via Box-Muller; the second variate of each pair is cached.
  double normal() noexcept {
    if (has_spare_normal_) {
      has_spare_normal_ = false;
      return spare_normal_;
    }
    const double u1 = uniform_open0();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.14159265358979323846 * u2;
    spare_normal_ = radius * std::sin(angle);
    has_spare_normal_ = true;
    return radius * std::cos(angle);
  }

  /// Exponential with the given rate (> 0).
  double exponential(double rate) noexcept { return -std::log(uniform_open0()) / rate; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> s_{};
  double spare_normal_ = 0.0;
  bool has_spare_normal_ = false;
};

}  // namespace lci
