#pragma once
// Self-contained deterministic RNG (xoshiro256** seeded via splitmix64) so
// that seeded runs reproduce bit-for-bit across platforms and stdlibs.
// Substreams are derived by hashing (seed, index) pairs; results are therefore
// independent of evaluation order.

#include <cstdint>

#include "cqec/dense.hpp"

namespace cqec {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  static Rng substream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t sm = seed ^ (0x1234567f00d5eedULL + index * 0x9e3779b97f4a7c15ULL);
    std::uint64_t mixed = splitmix64(sm);
    return Rng(mixed ^ (index << 1) ^ seed);
  }

  std::uint64_t next_u64() {
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

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  std::uint64_t uniform_below(std::uint64_t n) { return next_u64() % n; }

  // Standard normal via Box-Muller (cached spare).
  double gaussian();

  cx complex_gaussian() { return {gaussian(), gaussian()}; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t s_[4] = {};
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Haar-random normalized ket; the global phase is fixed so that the first
// nonzero amplitude is real positive (dim 1 always yields |0⟩ exactly).
DenseKet random_haar_ket(const ModeSpace& space, Rng& rng);
DenseKet random_haar_ket(int64_t dim, std::uint64_t seed);

// Random density operator ρ = Σ w_i |v_i⟩⟨v_i| of the given rank.
DenseOperator random_density(const ModeSpace& space, Rng& rng, int rank = 2);

}  // namespace cqec
