#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "psts/error.hpp"

namespace psts {

/// Dense point index in [0, order).
using Point = std::uint32_t;

/// Largest order any system may have. Point sets are fixed-width bitsets.
inline constexpr std::size_t kMaxOrder = 256;

class PointSet {
 public:
  static constexpr std::size_t kWords = kMaxOrder / 64;

  constexpr PointSet() = default;
  PointSet(std::initializer_list<Point> points) {
    for (Point p : points) insert(p);
  }
  template <typename Range>
  static PointSet from_range(const Range& points) {
    PointSet s;
    for (Point p : points) s.insert(static_cast<Point>(p));
    return s;
  }
  /// {0, 1, ..., n-1}
  static PointSet prefix(std::size_t n);

  void insert(Point p) { words_[p >> 6] |= std::uint64_t{1} << (p & 63); }
  void erase(Point p) { words_[p >> 6] &= ~(std::uint64_t{1} << (p & 63)); }
  bool contains(Point p) const { return (words_[p >> 6] >> (p & 63)) & 1U; }

  std::size_t size() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  /// Least member, or nullopt when empty.
  std::optional<Point> first() const {
    for (std::size_t i = 0; i < kWords; ++i)
      if (words_[i]) return static_cast<Point>(i * 64 + std::countr_zero(words_[i]));
    return std::nullopt;
  }
  bool is_subset_of(const PointSet& other) const {
    for (std::size_t i = 0; i < kWords; ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }
  bool intersects(const PointSet& other) const {
    for (std::size_t i = 0; i < kWords; ++i)
      if (words_[i] & other.words_[i]) return true;
    return false;
  }

  PointSet& operator|=(const PointSet& o) {
    for (std::size_t i = 0; i < kWords; ++i) words_[i] |= o.words_[i];
    return *this;
  }
  PointSet& operator&=(const PointSet& o) {
    for (std::size_t i = 0; i < kWords; ++i) words_[i] &= o.words_[i];
    return *this;
  }
  PointSet& operator^=(const PointSet& o) {
    for (std::size_t i = 0; i < kWords; ++i) words_[i] ^= o.words_[i];
    return *this;
  }
  /// Set difference.
  PointSet& operator-=(const PointSet& o) {
    for (std::size_t i = 0; i < kWords; ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend PointSet operator|(PointSet a, const PointSet& b) { return a |= b; }
  friend PointSet operator&(PointSet a, const PointSet& b) { return a &= b; }
  friend PointSet operator^(PointSet a, const PointSet& b) { return a ^= b; }
  friend PointSet operator-(PointSet a, const PointSet& b) { return a -= b; }

  std::vector<Point> to_vector() const;

  friend bool operator==(const PointSet&, const PointSet&) = default;
  friend auto operator<=>(const PointSet&, const PointSet&) = default;

  std::size_t hash() const;

 private:
  std::array<std::uint64_t, kWords> words_{};
};

/// A triple of distinct points stored in ascending order.
struct Block {
  std::array<Point, 3> points{};

  /// Sorts the three points; throws RepeatedPointInBlock if two coincide.
  static Block make(Point a, Point b, Point c);

  bool contains(Point p) const { return points[0] == p || points[1] == p || points[2] == p; }
  PointSet as_set() const { return PointSet{points[0], points[1], points[2]}; }
  /// Third point of the block given two of its members.
  Point third(Point x, Point y) const;

  friend bool operator==(const Block&, const Block&) = default;
  friend auto operator<=>(const Block&, const Block&) = default;
};

using RawTriple = std::array<std::size_t, 3>;

/// A validated partial Steiner triple system. Immutable after construction.
class TripleSystem {
 public:
  TripleSystem() = default;

  std::size_t order() const { return order_; }
  std::span<const Block> blocks() const { return blocks_; }
  std::size_t block_count() const { return blocks_.size(); }
  const Block& block(std::size_t i) const { return blocks_[i]; }
  const PointSet& block_set(std::size_t i) const { return block_sets_[i]; }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Point p) const { return labels_[p]; }
  std::optional<Point> find_label(std::string_view label) const;

  /// Index of the block containing both points, if any.
  std::optional<std::size_t> block_of_pair(Point x, Point y) const;
  bool is_block(Point x, Point y, Point z) const;
  std::optional<std::size_t> find_block(const Block& b) const;
  /// Blocks through `p`, in canonical order.
  std::span<const std::size_t> blocks_through(Point p) const { return through_[p]; }

  PointSet points() const { return PointSet::prefix(order_); }

  /// Same blocks, `extra` additional isolated points appended.
  TripleSystem with_isolated_points(std::size_t extra) const;

  friend bool operator==(const TripleSystem& a, const TripleSystem& b) {
    return a.order_ == b.order_ && a.labels_ == b.labels_ && a.blocks_ == b.blocks_;
  }

 private:
  friend TripleSystem validate_system(std::size_t, std::span<const RawTriple>,
                                      std::vector<std::string>);

  std::size_t order_ = 0;
  std::vector<std::string> labels_;
  std::vector<Block> blocks_;
  std::vector<PointSet> block_sets_;
  std::vector<std::int32_t> pair_index_;  // order_ * order_, -1 if uncovered
  std::vector<std::vector<std::size_t>> through_;
};

/// Default label scheme: decimal indices "0", ..., "n-1".
std::vector<std::string> default_labels(std::size_t n);

/// Builds a system from index triples. Blocks are sorted into canonical
/// (lexicographic) order. `labels` may be empty, in which case the default
/// scheme is used; otherwise it must contain n distinct tokens.
TripleSystem validate_system(std::size_t n, std::span<const RawTriple> raw_blocks,
                             std::vector<std::string> labels = {});

/// A system restricted to a subset of points, reindexed densely, together
/// with the map back to the parent's indices.
struct Subsystem {
  TripleSystem system;
  std::vector<Point> to_parent;
};

/// Blocks of `t` lying entirely inside `points`. Labels are kept.
Subsystem induced_subsystem(const TripleSystem& t, const PointSet& points);

class Sequence {
 public:
  Sequence() = default;
  /// Throws SequenceNotPermutation unless `entries` is a permutation of [0, order).
  Sequence(std::vector<Point> entries, std::size_t order);

  static Sequence identity(std::size_t order);

  std::size_t size() const { return entries_.size(); }
  std::span<const Point> entries() const { return entries_; }
  Point operator[](std::size_t i) const { return entries_[i]; }
  Sequence reversed() const;

  friend bool operator==(const Sequence&, const Sequence&) = default;

 private:
  std::vector<Point> entries_;
};

struct Segment {
  std::size_t start = 0;
  std::size_t length = 0;
  bool proper = false;

  friend bool operator==(const Segment&, const Segment&) = default;
};

struct PartitionWitness {
  std::vector<Block> parts;

  PointSet covered() const;
  friend bool operator==(const PartitionWitness&, const PartitionWitness&) = default;
};

struct InadmissibleSegment {
  Segment segment;
  PartitionWitness witness;
};

/// True iff `s` is a disjoint union of blocks of `t`. No witness is built.
bool has_partition(const PointSet& s, const TripleSystem& t);

/// Deterministic: branches on the least uncovered point and tries its blocks
/// in canonical order. The returned parts are in the order they were chosen.
std::optional<PartitionWitness> partition_into_blocks(const PointSet& s, const TripleSystem& t);

/// Calls `visit` for every partition of `s` into blocks, stopping early when
/// `visit` returns false. Returns the number of partitions visited.
std::size_t for_each_partition(const PointSet& s, const TripleSystem& t,
                               const std::function<bool(const PartitionWitness&)>& visit);

std::vector<InadmissibleSegment> inadmissible_segments(const Sequence& seq, const TripleSystem& t);
bool is_admissible(const Sequence& seq, const TripleSystem& t);

/// Points of a segment of `seq` as a set.
PointSet segment_points(const Sequence& seq, const Segment& seg);

std::string block_to_string(const Block& b, const TripleSystem& t);

}  // namespace psts

template <>
struct std::hash<psts::PointSet> {
  std::size_t operator()(const psts::PointSet& s) const noexcept { return s.hash(); }
};
