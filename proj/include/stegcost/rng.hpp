#pragma once

#include <cstdint>

namespace stegcost {

// All randomness in the project flows through this counter-based generator
// (SplitMix64 finalizer over key + counter * golden ratio). Draw i of a
// stream depends only on (seed, stream, i), so any substream can be replayed
// or addressed out of order and results are identical across platforms.

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t splitmix_at(std::uint64_t key, std::uint64_t index) noexcept {
  return mix64(key + (index + 1) * kGolden);
}

// Hierarchical stream derivation: derive(derive(seed, a), b) gives
// independent keys for (a, b) paths.
constexpr std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream) noexcept {
  return mix64(mix64(seed + kGolden) ^ (stream * 0xD1B54A32D192ED03ull + 0x8BB84B93962EACC9ull));
}

// Fixed stream tags so independent draws never share a counter sequence.
enum StreamTag : std::uint64_t {
  kStreamChannel = 1,
  kStreamLackSelect = 2,
  kStreamRstegSchedule = 3,
  kStreamPad = 4,
  kStreamSecret = 5,
  kStreamBits = 6,
  kStreamFixture = 7,
  kStreamRepeat = 8,
  kStreamCase = 9,
  kStreamTrial = 10,
};

inline double unit_double(std::uint64_t word) noexcept {
  return static_cast<double>(word >> 11) * 0x1.0p-53;  // [0, 1)
}

// Stateless keyed draw: uniform [0,1) for (seed, stream, index).
inline double keyed_unit(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept {
  return unit_double(splitmix_at(derive_stream(seed, stream), index));
}

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(derive_stream(seed, stream)) {}

  std::uint64_t next_u64() noexcept { return splitmix_at(key_, counter_++); }
  double next_unit() noexcept { return unit_double(next_u64()); }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * next_unit(); }
  bool bernoulli(double p) noexcept { return next_unit() < p; }

  // value in [0, n)
  std::uint64_t below(std::uint64_t n) noexcept {
    return n == 0 ? 0 : next_u64() % n;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace stegcost
