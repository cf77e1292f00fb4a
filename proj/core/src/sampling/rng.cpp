#include "sclon/sampling/rng.hpp"

#include <cmath>
#include <numbers>

namespace sclon::sampling {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

KeyedStream::KeyedStream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) noexcept
    : key_(splitmix64(seed)) {
  for (auto k : keys) key_ = splitmix64(key_ ^ splitmix64(k + 0x632be59bd9b4e019ULL));
}

std::uint64_t KeyedStream::next() noexcept {
  return splitmix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_);
}

double KeyedStream::uniform() noexcept {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double KeyedStream::normal() noexcept {
  // 1 - u lies in (0, 1], keeping the log finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace sclon::sampling
