#pragma once

#include <cstdint>
#include <initializer_list>

namespace sclon::sampling {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Counter-based stream keyed by a seed and a tuple of indices (sample, mode,
/// component, ...). The n-th draw depends only on the key and n, so a sample
/// is reproduced regardless of batch size, draw order across samples, or
/// thread count.
class KeyedStream {
 public:
  KeyedStream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) noexcept;

  std::uint64_t next() noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Standard normal by Box-Muller; consumes two uniforms per call.
  double normal() noexcept;

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace sclon::sampling
