#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>

namespace reconlab::detail {

inline constexpr std::size_t words_for(std::size_t bits) noexcept { return (bits + 63) / 64; }

inline bool test_bit(std::span<const std::uint64_t> w, std::size_t i) noexcept {
  return (w[i >> 6] >> (i & 63)) & 1u;
}

inline void set_bit(std::span<std::uint64_t> w, std::size_t i) noexcept {
  w[i >> 6] |= std::uint64_t{1} << (i & 63);
}

inline void clear_bit(std::span<std::uint64_t> w, std::size_t i) noexcept {
  w[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
}

inline std::size_t popcount(std::span<const std::uint64_t> w) noexcept {
  std::size_t c = 0;
  for (auto x : w) c += static_cast<std::size_t>(std::popcount(x));
  return c;
}

inline std::size_t popcount_and(std::span<const std::uint64_t> a,
                                std::span<const std::uint64_t> b) noexcept {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return c;
}

/// Calls fn(index) for every set bit, ascending.
template <class Fn>
inline void for_each_bit(std::span<const std::uint64_t> w, Fn&& fn) {
  for (std::size_t k = 0; k < w.size(); ++k) {
    std::uint64_t x = w[k];
    while (x) {
      const int b = std::countr_zero(x);
      fn(k * 64 + static_cast<std::size_t>(b));
      x &= x - 1;
    }
  }
}

}  // namespace reconlab::detail
