#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "psts/core.hpp"

namespace psts::gen {

/// Base blocks over Z_n, developed under the rotation x -> x + 1 (mod n).
struct CyclicBase {
  std::size_t modulus = 0;
  std::vector<std::array<std::size_t, 3>> base_blocks;
};

/// Develops every base block through all n rotations. Blocks with short
/// orbits are deduplicated; two distinct developed blocks sharing a pair
/// raise DevelopmentCollision.
TripleSystem cyclic_system(const CyclicBase& base);

/// The cyclic STS(13) with bases {0,1,4} and {0,2,7}.
TripleSystem sts13();
/// The Fano plane as the cyclic STS(7) with base {0,1,3}.
TripleSystem fano();

/// m triangles sharing the hub point 0; order 2m+1.
TripleSystem friendship(std::size_t m);

/// Friendship graphs G_1..G_k (sizes[i] triangles each) where G_i and G_{i+1}
/// share one valency-2 point. Hubs are labelled h1..hk, shared points
/// s1..s(k-1), all other points x1, x2, ... in construction order. In G_i the
/// point shared with G_{i-1} lies in its first triangle and the point shared
/// with G_{i+1} in its second, so the two never coincide in one block.
TripleSystem friendship_chain(std::span<const std::size_t> sizes);

/// Johnson-Schonheim bound on the number of blocks of a PSTS(n).
std::size_t johnson_schonheim(std::size_t n);

struct RandomSystem {
  TripleSystem system;
  std::size_t requested = 0;
  std::size_t achieved = 0;
  /// True when greedy insertion ran out of compatible triples before reaching
  /// `requested`.
  bool saturated = false;
};

/// Greedy insertion of pair-disjoint triples drawn in a seeded random order.
/// Bit-exact per (n, target_blocks, seed) on every platform.
RandomSystem random_system(std::size_t n, std::size_t target_blocks, std::uint64_t seed);

/// Seeded Fisher-Yates shuffle on top of std::mt19937_64 raw output, so that
/// corpora do not depend on the standard library's distribution code.
template <typename T>
void portable_shuffle(std::vector<T>& items, std::uint64_t seed);

}  // namespace psts::gen

#include "psts/detail/shuffle.hpp"
