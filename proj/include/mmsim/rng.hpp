#pragma once

#include <cstdint>
#include <string_view>

namespace mmsim {

/// Counter-based generator: the i-th variate of a stream is the SplitMix64
/// finalizer applied to key + (i + 1) * golden-gamma. Any trial's variate can
/// be computed without touching the others, so serial and parallel loops over
/// the same index range draw identical numbers.
class CounterStream {
 public:
  static constexpr std::string_view kAlgorithm = "splitmix64-counter";
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  constexpr explicit CounterStream(std::uint64_t key, std::uint64_t position = 0) : key_(key), position_(position) {}

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  [[nodiscard]] static constexpr std::uint64_t bits_at(std::uint64_t key, std::uint64_t index) {
    return mix(key + (index + 1) * kGamma);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  [[nodiscard]] static constexpr double uniform_at(std::uint64_t key, std::uint64_t index) {
    return static_cast<double>(bits_at(key, index) >> 11) * 0x1.0p-53;
  }

  double next_uniform() { return uniform_at(key_, position_++); }

  [[nodiscard]] constexpr std::uint64_t key() const { return key_; }
  [[nodiscard]] constexpr std::uint64_t position() const { return position_; }

 private:
  std::uint64_t key_;
  std::uint64_t position_;
};

/// Key of the substream owned by shard `shard` of a run seeded with `seed`.
/// Two rounds of mixing keep neighbouring seeds and shard indices decorrelated.
constexpr std::uint64_t derive_stream_key(std::uint64_t seed, std::uint64_t shard) {
  return CounterStream::mix(CounterStream::mix(seed) ^ CounterStream::mix(shard * CounterStream::kGamma + 0x632BE59BD9B4E019ULL));
}

}  // namespace mmsim
