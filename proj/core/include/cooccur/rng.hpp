#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace cooccur {

// splitmix64; used to expand seeds and derive per-stage streams.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// xoshiro256** with hand-rolled distributions. Every draw is a pure function
// of the seed: no std::*_distribution is used anywhere, so streams are
// identical across compilers and platforms.
class Rng {
public:
  static constexpr std::string_view kAlgorithm = "xoshiro256**";

  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64_next(sm);
  }

  // Independent stream for (root seed, stage tag, replicate index).
  static Rng derive(std::uint64_t root, std::string_view stage, std::uint64_t index);

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0,1), 53 mantissa bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform_real(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Unbiased integer in [0, n). n must be > 0.
  std::uint64_t uniform_below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  template <class T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(uniform_below(i));
      using std::swap;
      swap(values[i - 1], values[j]);
    }
  }

private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

// Seed for the stream at (root, stage, index); the expansion every pipeline
// stage uses.
inline std::uint64_t derive_seed(std::uint64_t root, std::string_view stage, std::uint64_t index) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a over the stage tag
  for (unsigned char c : stage) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::uint64_t sm = root;
  return (splitmix64_next(sm) ^ h) * 0x9e3779b97f4a7c15ULL + index;
}

inline Rng Rng::derive(std::uint64_t root, std::string_view stage, std::uint64_t index) {
  return Rng(derive_seed(root, stage, index));
}

}  // namespace cooccur
