#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "psts/core.hpp"

namespace psts::seq {

enum class Outcome { Sequenceable, NotSequenceable, Unknown };

std::string_view to_string(Outcome o);

struct SearchCertificate {
  std::uint64_t nodes_explored = 0;
  bool exhausted = false;
};

struct Decision {
  Outcome outcome = Outcome::Unknown;
  std::optional<Sequence> witness;
  /// Present when the outcome is NotSequenceable.
  std::optional<SearchCertificate> certificate;
  std::uint64_t budget_spent = 0;
};

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

struct DecideOptions {
  /// Maximum number of prefix extensions.
  std::uint64_t budget = kDefaultBudget;
  /// Worker threads splitting the first-point branches.
  unsigned parallel = 1;
  /// Forces a single sequential search.
  bool deterministic = false;
};

/// Depth-first search over prefixes. A point is appended in canonical order
/// and the prefix is pruned as soon as a proper segment ending at the new
/// position splits into disjoint blocks. When several workers run, the
/// reported witness is still the one from the lowest first-point branch, so
/// it matches the sequential search whenever the budget is not hit.
Decision decide(const TripleSystem& t, const DecideOptions& options = {});

struct Enumeration {
  std::uint64_t admissible = 0;
  std::uint64_t nodes_explored = 0;
  bool exhausted = false;
  std::optional<Sequence> first;
};

/// Walks the whole pruned tree of `decide`, counting admissible sequences.
Enumeration enumerate_admissible(const TripleSystem& t, std::uint64_t budget = kDefaultBudget);

/// Label slots of the order-12 template 1,2,4,3,5,7,6,8,a,9,b,c.
enum Slot : std::size_t { L1, L2, L3, L4, L5, L6, L7, L8, L9, La, Lb, Lc };
inline constexpr std::array<Slot, 12> kTemplate{L1, L2, L4, L3, L5, L7, L6, L8, La, L9, Lb, Lc};

struct Labeling {
  /// roles[i] is the index into the given blocks that plays B_{i+1}.
  std::array<std::size_t, 3> roles{};
  /// points[slot] is the point carrying that label.
  std::array<Point, 12> points{};
  /// Position of this labeling in the search order (0-based).
  std::size_t rank = 0;

  /// The template read through this labeling, in the system's indices.
  std::vector<Point> template_order() const;
};

inline constexpr std::size_t kLabelingCount = 6 * 6 * 6 * 6 * 6 * 6;  // 46656

/// Order-12 systems with three disjoint blocks `d`: tries every assignment
/// of the blocks to B1..B3, every labelling inside each block and every
/// labelling of the three remaining points, and returns the first one whose
/// template sequence is admissible.
Labeling pi_template_instantiate(const TripleSystem& t, std::span<const Block> d);

/// Appends every point outside `residual_points` after `residual_order`
/// (in canonical order, or in `tail` order when given).
Sequence extend(const TripleSystem& t, const PointSet& residual_points,
                std::span<const Point> residual_order,
                std::optional<std::span<const Point>> tail = std::nullopt);

struct InterleaveOptions {
  std::size_t retries = 100;
};

/// Systems with packing number k and order at least 15k - 5: packing points
/// interleaved with outside points (five per gap when there are 15k - 5 of
/// them, evenly spread otherwise), then outside points swapped until no
/// proper segment splits into blocks. Each retry reshuffles the outside
/// points with a fixed seed.
Sequence interleave_large(const TripleSystem& t, std::size_t k,
                          const InterleaveOptions& options = {});

struct Sts13Entry {
  Point vertex = 0;
  /// Power of the rotation x -> x + 1 applied to the base quadruple.
  std::size_t exponent = 0;
  std::array<Block, 4> blocks;
};

struct Sts13Certificate {
  std::vector<Sts13Entry> entries;
  /// Set once all 13 entries verify: deleting the first or the last point
  /// of any ordering leaves a union of four disjoint blocks.
  bool every_sequence_inadmissible = false;
};

/// The base quadruple [0,2,7],[1,3,8],[5,6,9],[4,10,12] misses 11.
inline constexpr std::array<std::array<Point, 3>, 4> kSts13Quadruple{
    {{0, 2, 7}, {1, 3, 8}, {5, 6, 9}, {4, 10, 12}}};

Sts13Certificate verify_sts13_certificate();

struct Construction {
  Sequence sequence;
  std::string method;
  std::size_t nu = 0;
  /// Number of extra relabelings applied after the explicit recipe.
  std::size_t repairs = 0;
};

/// Chooses a construction by packing number and order; every result is
/// re-checked with is_admissible before it is returned.
Construction construct_with_trace(const TripleSystem& t, std::uint64_t fallback_budget = kDefaultBudget);

Sequence construct(const TripleSystem& t);

}  // namespace psts::seq
