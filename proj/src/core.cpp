#include "psts/core.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace psts {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::RepeatedPointInBlock: return "RepeatedPointInBlock";
    case ErrorKind::PairInTwoBlocks: return "PairInTwoBlocks";
    case ErrorKind::PointOutOfRange: return "PointOutOfRange";
    case ErrorKind::OrderTooLarge: return "OrderTooLarge";
    case ErrorKind::SequenceNotPermutation: return "SequenceNotPermutation";
    case ErrorKind::DevelopmentCollision: return "DevelopmentCollision";
    case ErrorKind::SizeTooSmall: return "SizeTooSmall";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::OrderTooSmall: return "OrderTooSmall";
    case ErrorKind::PartContainsWholeBlock: return "PartContainsWholeBlock";
    case ErrorKind::WrongCardinality: return "WrongCardinality";
    case ErrorKind::NotSequenceableSystem: return "NotSequenceableSystem";
    case ErrorKind::BudgetExhausted: return "BudgetExhausted";
    case ErrorKind::NoAdmissibleLabeling: return "NoAdmissibleLabeling";
    case ErrorKind::ResidualNotAdmissible: return "ResidualNotAdmissible";
    case ErrorKind::RepairFailed: return "RepairFailed";
    case ErrorKind::CertificateFailure: return "CertificateFailure";
    case ErrorKind::VerificationFailure: return "VerificationFailure";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// PointSet / Block

PointSet PointSet::prefix(std::size_t n) {
  PointSet s;
  for (std::size_t i = 0; i < kWords && n > 0; ++i) {
    if (n >= 64) {
      s.words_[i] = ~std::uint64_t{0};
      n -= 64;
    } else {
      s.words_[i] = (std::uint64_t{1} << n) - 1;
      n = 0;
    }
  }
  return s;
}

std::vector<Point> PointSet::to_vector() const {
  std::vector<Point> out;
  for (std::size_t i = 0; i < kWords; ++i) {
    auto w = words_[i];
    while (w) {
      out.push_back(static_cast<Point>(i * 64 + std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

std::size_t PointSet::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (auto w : words_) {
    h ^= w;
    h *= 0x100000001b3ULL;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

Block Block::make(Point a, Point b, Point c) {
  if (a == b || b == c || a == c) {
    std::ostringstream os;
    os << "block [" << a << "," << b << "," << c << "] repeats a point";
    throw Error(ErrorKind::RepeatedPointInBlock, os.str());
  }
  std::array<Point, 3> p{a, b, c};
  std::sort(p.begin(), p.end());
  return Block{p};
}

Point Block::third(Point x, Point y) const {
  for (Point p : points)
    if (p != x && p != y) return p;
  return points[2];
}

PointSet PartitionWitness::covered() const {
  PointSet s;
  for (const auto& b : parts) s |= b.as_set();
  return s;
}

// ---------------------------------------------------------------------------
// TripleSystem

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

TripleSystem validate_system(std::size_t n, std::span<const RawTriple> raw_blocks,
                             std::vector<std::string> labels) {
  if (n > kMaxOrder) {
    throw Error(ErrorKind::OrderTooLarge,
                "order " + std::to_string(n) + " exceeds " + std::to_string(kMaxOrder));
  }
  if (labels.empty()) {
    labels = default_labels(n);
  } else if (labels.size() != n) {
    throw Error(ErrorKind::PointOutOfRange, "label table has " + std::to_string(labels.size()) +
                                                " entries for order " + std::to_string(n));
  } else {
    std::unordered_set<std::string> seen;
    for (const auto& l : labels)
      if (!seen.insert(l).second) throw Error(ErrorKind::ParseError, "duplicate label " + l);
  }

  auto describe = [&](const Block& b) {
    return "[" + labels[b.points[0]] + "," + labels[b.points[1]] + "," + labels[b.points[2]] + "]";
  };

  std::vector<Block> blocks;
  blocks.reserve(raw_blocks.size());
  for (const auto& r : raw_blocks) {
    for (auto p : r) {
      if (p >= n) {
        throw Error(ErrorKind::PointOutOfRange,
                    "point " + std::to_string(p) + " not below order " + std::to_string(n));
      }
    }
    blocks.push_back(Block::make(static_cast<Point>(r[0]), static_cast<Point>(r[1]),
                                 static_cast<Point>(r[2])));
  }
  std::sort(blocks.begin(), blocks.end());

  TripleSystem t;
  t.order_ = n;
  t.labels_ = labels;
  t.pair_index_.assign(n * n, -1);
  t.through_.assign(n, {});
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& b = blocks[i];
    for (int u = 0; u < 3; ++u) {
      for (int v = u + 1; v < 3; ++v) {
        auto x = b.points[u], y = b.points[v];
        auto& slot = t.pair_index_[x * n + y];
        if (slot >= 0) {
          throw Error(ErrorKind::PairInTwoBlocks,
                      "pair {" + t.labels_[x] + "," + t.labels_[y] + "} lies in " +
                          describe(blocks[static_cast<std::size_t>(slot)]) + " and " +
                          describe(b));
        }
        slot = static_cast<std::int32_t>(i);
        t.pair_index_[y * n + x] = static_cast<std::int32_t>(i);
      }
    }
    for (auto p : b.points) t.through_[p].push_back(i);
    t.block_sets_.push_back(b.as_set());
  }
  t.blocks_ = std::move(blocks);
  return t;
}

std::optional<Point> TripleSystem::find_label(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<Point>(i);
  return std::nullopt;
}

std::optional<std::size_t> TripleSystem::block_of_pair(Point x, Point y) const {
  if (x >= order_ || y >= order_ || x == y) return std::nullopt;
  auto slot = pair_index_[x * order_ + y];
  if (slot < 0) return std::nullopt;
  return static_cast<std::size_t>(slot);
}

bool TripleSystem::is_block(Point x, Point y, Point z) const {
  auto b = block_of_pair(x, y);
  return b && blocks_[*b].contains(z) && z != x && z != y;
}

std::optional<std::size_t> TripleSystem::find_block(const Block& b) const {
  auto i = block_of_pair(b.points[0], b.points[1]);
  if (i && blocks_[*i] == b) return i;
  return std::nullopt;
}

TripleSystem TripleSystem::with_isolated_points(std::size_t extra) const {
  std::vector<RawTriple> raw;
  for (const auto& b : blocks_) raw.push_back({b.points[0], b.points[1], b.points[2]});
  auto labels = labels_;
  std::unordered_set<std::string> used(labels.begin(), labels.end());
  std::size_t next = order_;
  for (std::size_t i = 0; i < extra; ++i) {
    std::string l;
    do {
      l = std::to_string(next++);
    } while (used.count(l));
    used.insert(l);
    labels.push_back(l);
  }
  return validate_system(order_ + extra, raw, std::move(labels));
}

Subsystem induced_subsystem(const TripleSystem& t, const PointSet& points) {
  Subsystem sub;
  sub.to_parent = points.to_vector();
  std::vector<std::size_t> to_child(t.order(), t.order());
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < sub.to_parent.size(); ++i) {
    to_child[sub.to_parent[i]] = i;
    labels.push_back(t.label(sub.to_parent[i]));
  }
  std::vector<RawTriple> raw;
  for (std::size_t i = 0; i < t.block_count(); ++i) {
    if (!t.block_set(i).is_subset_of(points)) continue;
    const auto& b = t.block(i);
    raw.push_back({to_child[b.points[0]], to_child[b.points[1]], to_child[b.points[2]]});
  }
  sub.system = validate_system(sub.to_parent.size(), raw, std::move(labels));
  return sub;
}

// ---------------------------------------------------------------------------
// Sequence

Sequence::Sequence(std::vector<Point> entries, std::size_t order) : entries_(std::move(entries)) {
  if (entries_.size() != order) {
    throw Error(ErrorKind::SequenceNotPermutation,
                "sequence has " + std::to_string(entries_.size()) + " entries, order is " +
                    std::to_string(order));
  }
  std::vector<bool> seen(order, false);
  for (Point p : entries_) {
    if (p >= order || seen[p]) {
      throw Error(ErrorKind::SequenceNotPermutation,
                  "entry " + std::to_string(p) + " is out of range or repeated");
    }
    seen[p] = true;
  }
}

Sequence Sequence::identity(std::size_t order) {
  std::vector<Point> e(order);
  for (std::size_t i = 0; i < order; ++i) e[i] = static_cast<Point>(i);
  return Sequence(std::move(e), order);
}

Sequence Sequence::reversed() const {
  Sequence r = *this;
  std::reverse(r.entries_.begin(), r.entries_.end());
  return r;
}

PointSet segment_points(const Sequence& seq, const Segment& seg) {
  PointSet s;
  for (std::size_t i = seg.start; i < seg.start + seg.length; ++i) s.insert(seq[i]);
  return s;
}

// ---------------------------------------------------------------------------
// Partitions

namespace {

bool partition_exists(const PointSet& remaining, const TripleSystem& t) {
  auto p = remaining.first();
  if (!p) return true;
  for (auto bi : t.blocks_through(*p)) {
    const auto& bs = t.block_set(bi);
    if (bs.is_subset_of(remaining) && partition_exists(remaining - bs, t)) return true;
  }
  return false;
}

bool partition_search(const PointSet& remaining, const TripleSystem& t, std::vector<Block>& parts) {
  auto p = remaining.first();
  if (!p) return true;
  for (auto bi : t.blocks_through(*p)) {
    const auto& bs = t.block_set(bi);
    if (!bs.is_subset_of(remaining)) continue;
    parts.push_back(t.block(bi));
    if (partition_search(remaining - bs, t, parts)) return true;
    parts.pop_back();
  }
  return false;
}

bool partition_enumerate(const PointSet& remaining, const TripleSystem& t, std::vector<Block>& parts,
                         std::size_t& count,
                         const std::function<bool(const PartitionWitness&)>& visit) {
  auto p = remaining.first();
  if (!p) {
    ++count;
    return visit(PartitionWitness{parts});
  }
  for (auto bi : t.blocks_through(*p)) {
    const auto& bs = t.block_set(bi);
    if (!bs.is_subset_of(remaining)) continue;
    parts.push_back(t.block(bi));
    bool go_on = partition_enumerate(remaining - bs, t, parts, count, visit);
    parts.pop_back();
    if (!go_on) return false;
  }
  return true;
}

}  // namespace

bool has_partition(const PointSet& s, const TripleSystem& t) {
  if (s.size() % 3 != 0) return false;
  return partition_exists(s, t);
}

std::optional<PartitionWitness> partition_into_blocks(const PointSet& s, const TripleSystem& t) {
  if (s.size() % 3 != 0 || !s.is_subset_of(t.points())) return std::nullopt;
  std::vector<Block> parts;
  if (!partition_search(s, t, parts)) return std::nullopt;
  return PartitionWitness{std::move(parts)};
}

std::size_t for_each_partition(const PointSet& s, const TripleSystem& t,
                               const std::function<bool(const PartitionWitness&)>& visit) {
  if (s.size() % 3 != 0 || !s.is_subset_of(t.points())) return 0;
  std::vector<Block> parts;
  std::size_t count = 0;
  partition_enumerate(s, t, parts, count, visit);
  return count;
}

std::vector<InadmissibleSegment> inadmissible_segments(const Sequence& seq, const TripleSystem& t) {
  if (seq.size() != t.order()) {
    throw Error(ErrorKind::SequenceNotPermutation, "sequence length does not match order");
  }
  std::vector<InadmissibleSegment> out;
  const std::size_t n = seq.size();
  for (std::size_t len = 3; len < n; len += 3) {
    for (std::size_t start = 0; start + len <= n; ++start) {
      Segment seg{start, len, true};
      if (auto w = partition_into_blocks(segment_points(seq, seg), t)) {
        out.push_back({seg, std::move(*w)});
      }
    }
  }
  return out;
}

bool is_admissible(const Sequence& seq, const TripleSystem& t) {
  if (seq.size() != t.order()) {
    throw Error(ErrorKind::SequenceNotPermutation, "sequence length does not match order");
  }
  const std::size_t n = seq.size();
  std::vector<PointSet> prefix(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    prefix[i + 1] = prefix[i];
    prefix[i + 1].insert(seq[i]);
  }
  for (std::size_t len = 3; len < n; len += 3) {
    for (std::size_t start = 0; start + len <= n; ++start) {
      if (has_partition(prefix[start + len] - prefix[start], t)) return false;
    }
  }
  return true;
}

std::string block_to_string(const Block& b, const TripleSystem& t) {
  return "[" + t.label(b.points[0]) + "," + t.label(b.points[1]) + "," + t.label(b.points[2]) +
         "]";
}

}  // namespace psts
