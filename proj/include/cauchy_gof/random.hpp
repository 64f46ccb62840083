#pragma once

#include <cstdint>
#include <limits>

namespace cauchy_gof {

/// SplitMix64 output finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Master seed of a simulation. Replication r, regeneration attempt a and
/// observation i draw from their own stream keyed by (seed, r, a, i), so a
/// sample never depends on execution order or worker count.
struct SeedSpec {
  std::uint64_t master_seed = 20170101;

  constexpr std::uint64_t stream_key(std::uint64_t replication, std::uint64_t attempt,
                                     std::uint64_t observation) const noexcept {
    std::uint64_t k = mix64(master_seed ^ 0x6a09e667f3bcc909ULL);
    k = mix64(k + 0x9e3779b97f4a7c15ULL * (replication + 1));
    k = mix64(k ^ (0xbb67ae8584caa73bULL * (attempt + 1)));
    return mix64(k + 0x3c6ef372fe94f82bULL * (observation + 1));
  }

  /// An unrelated master seed for a named purpose (e.g. an independent
  /// validation run).
  constexpr SeedSpec derive(std::uint64_t purpose) const noexcept {
    return SeedSpec{mix64(master_seed ^ mix64(purpose + 0xa54ff53a5f1d36f1ULL))};
  }
};

/// SplitMix64 stream; satisfies UniformRandomBitGenerator.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  explicit constexpr StreamRng(std::uint64_t key) noexcept : state_(key) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  /// Uniform on the open interval (0, 1) with 53-bit resolution.
  constexpr double uniform_open() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

}  // namespace cauchy_gof
