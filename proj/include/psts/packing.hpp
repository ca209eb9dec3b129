#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "psts/core.hpp"

namespace psts::pack {

struct PackingResult {
  /// Maximum number of pairwise point-disjoint blocks (a lower bound when
  /// `exact` is false).
  std::size_t nu = 0;
  std::vector<Block> witness;
  std::uint64_t nodes_explored = 0;
  bool exact = true;
};

/// Branch and bound over canonical block order: branch on the first block
/// compatible with the partial packing (include, then exclude), bound by a
/// third of the points still coverable by remaining compatible blocks.
PackingResult max_disjoint_blocks(const TripleSystem& t,
                                  std::optional<std::uint64_t> budget = std::nullopt);

using BlockTriple = std::array<Block, 3>;

struct BadSetReport {
  std::size_t m_size = 0;
  /// Sorted by their member lists.
  std::vector<PointSet> bad_sets;
  /// realizations[i] partitions V \ bad_sets[i]; the first triple in
  /// canonical order.
  std::vector<BlockTriple> realizations;
};

/// All M with |M| = n - 9 whose complement splits into three disjoint blocks.
BadSetReport bad_sets(const TripleSystem& t);

struct GoodSetResult {
  bool good = true;
  std::optional<BlockTriple> realization;
};

GoodSetResult is_good_set(const TripleSystem& t, const PointSet& m);

/// Bad points (n = 10) or bad sets in general, as a convenience predicate.
bool is_bad_set(const TripleSystem& t, const PointSet& m);

struct MatchingEdge {
  Point first = 0;   // endpoint in A1
  Point second = 0;  // endpoint in A2
  Point label = 0;   // third point of the part containing the edge

  friend bool operator==(const MatchingEdge&, const MatchingEdge&) = default;
};

struct InducedMatching {
  std::array<MatchingEdge, 3> edges;
};

/// Perfect matching of K_{A1,A2} induced by a three-block partition of a
/// 9-set containing A1 and A2, edges listed in part order.
InducedMatching induced_matching(const PartitionWitness& nine_set_partition, const Block& a1,
                                 const Block& a2);

}  // namespace psts::pack
