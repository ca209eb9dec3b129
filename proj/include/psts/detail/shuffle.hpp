#pragma once

#include <random>
#include <utility>
#include <vector>

namespace psts::gen {

namespace detail {

/// Uniform integer in [0, bound) by rejection on the raw 64-bit stream.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace detail

template <typename T>
void portable_shuffle(std::vector<T>& items, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = items.size(); i > 1; --i) {
    auto j = static_cast<std::size_t>(detail::uniform_below(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace psts::gen
