#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace scpqca
{

/// SplitMix64 step (Steele, Lea & Flood); advances `state` and returns the next output.
std::uint64_t splitmix64( std::uint64_t& state );

/// Seed for an independent sub-stream, e.g. one per resampling repetition.
std::uint64_t derive_seed( std::uint64_t seed, std::uint64_t stream );

/// xoshiro256** 1.0 (Blackman & Vigna), state expanded from a 64-bit seed with SplitMix64.
/// Every draw used by the library goes through `below`, so results are identical on all platforms.
class Xoshiro256StarStar
{
public:
  using result_type = std::uint64_t;

  explicit Xoshiro256StarStar( std::uint64_t seed );
  explicit Xoshiro256StarStar( const std::array<std::uint64_t, 4>& state ) : s_( state ) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform integer in [0, bound) by Lemire's multiply-and-reject method; `bound` must be > 0.
  std::uint64_t below( std::uint64_t bound );

  const std::array<std::uint64_t, 4>& state() const noexcept { return s_; }

private:
  std::array<std::uint64_t, 4> s_;
};

} // namespace scpqca
