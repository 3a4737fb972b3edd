#pragma once

#include <array>
#include <cstdint>

namespace reconlab {

/// (master_seed, stream_id) fully determines a random stream.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

/// Philox4x32-10 counter-based generator. The key is the master seed and the
/// 128-bit counter is (block index, stream id), so streams never overlap and a
/// stream's output does not depend on which thread draws it.
///
/// Bounded integers and doubles are derived here rather than via <random>
/// distributions, whose algorithms differ between standard libraries.
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;

  explicit Philox4x32(SeedSpec seed) : key_{lo(seed.master_seed), hi(seed.master_seed)}, stream_(seed.stream_id) {}
  Philox4x32(std::uint64_t master_seed, std::uint64_t stream_id) : Philox4x32(SeedSpec{master_seed, stream_id}) {}

  static Block block(Block counter, std::array<std::uint32_t, 2> key) noexcept {
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = std::uint64_t{kM0} * counter[0];
      const std::uint64_t p1 = std::uint64_t{kM1} * counter[2];
      counter = {hi(p1) ^ counter[1] ^ key[0], lo(p1), hi(p0) ^ counter[3] ^ key[1], lo(p0)};
      key[0] += kW0;
      key[1] += kW1;
    }
    return counter;
  }

  std::uint32_t next_u32() noexcept {
    if (pos_ == 4) refill();
    return buf_[pos_++];
  }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t a = next_u32();
    return a | (std::uint64_t{next_u32()} << 32);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double next_double() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [0, bound) by rejection; bound = 0 returns 0.
  std::uint64_t uniform_below(std::uint64_t bound) noexcept {
    if (bound <= 1) return 0;
    const std::uint64_t limit = 0 - (0 - bound) % bound;  // largest multiple of bound, mod 2^64
    while (true) {
      const std::uint64_t x = next_u64();
      if (limit == 0 || x < limit) return x % bound;
    }
  }

  bool bernoulli(double p) noexcept { return next_double() < p; }

  std::uint64_t blocks_used() const noexcept { return counter_; }

 private:
  static constexpr std::uint32_t kM0 = 0xD2511F53u;
  static constexpr std::uint32_t kM1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kW0 = 0x9E3779B9u;
  static constexpr std::uint32_t kW1 = 0xBB67AE85u;

  static constexpr std::uint32_t lo(std::uint64_t x) noexcept { return static_cast<std::uint32_t>(x); }
  static constexpr std::uint32_t hi(std::uint64_t x) noexcept { return static_cast<std::uint32_t>(x >> 32); }

  void refill() noexcept {
    buf_ = block({lo(counter_), hi(counter_), lo(stream_), hi(stream_)}, key_);
    ++counter_;
    pos_ = 0;
  }

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  Block buf_{};
  int pos_ = 4;
};

/// splitmix64 finalizer; used to derive per-n and per-purpose seeds.
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag) noexcept {
  return mix64(master ^ mix64(tag));
}

}  // namespace reconlab
