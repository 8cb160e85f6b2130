#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace gkpsim {

/// Deterministic random stream (xoshiro256++ seeded through splitmix64).
///
/// Streams are value types; a worker owns its stream and trial streams are
/// derived from (master seed, stream id) so results do not depend on how
/// trials are scheduled across workers. Gaussian draws use Box-Muller on the
/// raw 64-bit output, so sequences are reproducible independent of the
/// standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) word = splitmix64(x);
  }

  /// Stream for one unit of work (e.g. one Monte Carlo trial).
  static Rng substream(std::uint64_t master, std::uint64_t stream_id) {
    return Rng(mix(master, stream_id));
  }

  /// Order-independent combination of a seed with an index.
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t x = a ^ (0x9e3779b97f4a7c15ULL + (b << 1));
    x = splitmix64(x);
    x ^= b + 0xbf58476d1ce4e5b9ULL;
    return splitmix64(x);
  }

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

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Standard normal draw. One Box-Muller branch per call; no cached spare,
  /// so the mapping draw-index -> uniforms is fixed.
  double next_gaussian() {
    // log(0) is avoided by shifting the first uniform into (0, 1].
    const double u1 = 1.0 - next_unit();
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  static std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  static std::uint64_t splitmix64(std::uint64_t&& x) {
    std::uint64_t y = x;
    return splitmix64(y);
  }
  static std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace gkpsim
