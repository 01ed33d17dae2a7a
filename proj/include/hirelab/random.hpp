#pragma once

#include <cstdint>
#include <limits>

namespace hirelab {

namespace detail {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Counter-based random stream.
///
/// A stream is identified by (seed, stream id); the i-th output is a pure
/// function of (seed, stream id, i). Each Monte Carlo trial owns the stream
/// whose id is its trial index, so results never depend on how trials are
/// distributed over worker threads.
///
/// Satisfies std::uniform_random_bit_generator.
class RandomStream {
public:
  using result_type = std::uint64_t;

  constexpr RandomStream() noexcept : RandomStream(0, 0) {}
  constexpr RandomStream(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_(detail::mix64(seed ^ detail::mix64(stream + detail::kGolden))) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
    ++counter_;
    return detail::mix64(key_ + counter_ * detail::kGolden);
  }

  /// Uniform variate on the open interval (0, 1); 53 random bits, never 0 or 1.
  constexpr double uniform() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound). Exactly one draw per call (multiply-high,
  /// bias below bound / 2^64).
  constexpr std::uint64_t below(std::uint64_t bound) noexcept {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>((*this)()) * bound) >> 64);
  }

  /// Number of 64-bit outputs consumed so far.
  constexpr std::uint64_t consumed() const noexcept { return counter_; }

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace hirelab
