#include "psts/packing.hpp"

#include <algorithm>
#include <map>

namespace psts::pack {

namespace {

struct PackingSearch {
  const TripleSystem& t;
  std::optional<std::uint64_t> budget;
  std::size_t ceiling;  // floor(n / 3)

  std::vector<std::size_t> current;
  std::vector<std::size_t> best;
  std::uint64_t nodes = 0;
  bool out_of_budget = false;

  bool done() const { return out_of_budget || best.size() == ceiling; }

  void run(std::size_t from, const PointSet& avail) {
    if (done()) return;
    if (budget && nodes >= *budget) {
      out_of_budget = true;
      return;
    }
    ++nodes;

    std::optional<std::size_t> first;
    PointSet coverable;
    for (std::size_t j = from; j < t.block_count(); ++j) {
      if (!t.block_set(j).is_subset_of(avail)) continue;
      if (!first) first = j;
      coverable |= t.block_set(j);
    }
    if (current.size() > best.size()) best = current;
    if (!first || current.size() + coverable.size() / 3 <= best.size()) return;

    current.push_back(*first);
    run(*first + 1, avail - t.block_set(*first));
    current.pop_back();
    run(*first + 1, avail);
  }
};

}  // namespace

PackingResult max_disjoint_blocks(const TripleSystem& t, std::optional<std::uint64_t> budget) {
  PackingSearch s{t, budget, t.order() / 3, {}, {}, 0, false};
  s.run(0, t.points());
  PackingResult r;
  r.nu = s.best.size();
  for (auto i : s.best) r.witness.push_back(t.block(i));
  r.nodes_explored = s.nodes;
  r.exact = !s.out_of_budget;
  return r;
}

BadSetReport bad_sets(const TripleSystem& t) {
  const std::size_t n = t.order();
  if (n < 9) throw Error(ErrorKind::OrderTooSmall, "bad sets need order at least 9");

  const auto all = t.points();
  std::map<std::vector<Point>, std::pair<PointSet, BlockTriple>> found;
  const std::size_t b = t.block_count();
  for (std::size_t i = 0; i < b; ++i) {
    for (std::size_t j = i + 1; j < b; ++j) {
      if (t.block_set(i).intersects(t.block_set(j))) continue;
      const auto ij = t.block_set(i) | t.block_set(j);
      for (std::size_t k = j + 1; k < b; ++k) {
        if (t.block_set(k).intersects(ij)) continue;
        const auto m = all - (ij | t.block_set(k));
        found.try_emplace(m.to_vector(), m, BlockTriple{t.block(i), t.block(j), t.block(k)});
      }
    }
  }

  BadSetReport report;
  report.m_size = n - 9;
  for (auto& [key, entry] : found) {
    report.bad_sets.push_back(entry.first);
    report.realizations.push_back(entry.second);
  }
  return report;
}

GoodSetResult is_good_set(const TripleSystem& t, const PointSet& m) {
  if (!m.is_subset_of(t.points())) {
    throw Error(ErrorKind::PointOutOfRange, "set contains points outside the system");
  }
  if (t.order() < 9 || m.size() != t.order() - 9) {
    throw Error(ErrorKind::WrongCardinality,
                "a candidate bad set has n - 9 points, got " + std::to_string(m.size()));
  }
  GoodSetResult r;
  if (auto w = partition_into_blocks(t.points() - m, t)) {
    auto parts = w->parts;
    std::sort(parts.begin(), parts.end());
    r.good = false;
    r.realization = BlockTriple{parts[0], parts[1], parts[2]};
  }
  return r;
}

bool is_bad_set(const TripleSystem& t, const PointSet& m) { return !is_good_set(t, m).good; }

InducedMatching induced_matching(const PartitionWitness& partition, const Block& a1,
                                 const Block& a2) {
  const auto s1 = a1.as_set(), s2 = a2.as_set();
  if (s1.intersects(s2)) throw Error(ErrorKind::PreconditionViolated, "A1 and A2 must be disjoint");
  if (partition.parts.size() != 3) {
    throw Error(ErrorKind::PreconditionViolated, "a 9-set partition has exactly three parts");
  }
  const auto covered = partition.covered();
  if (covered.size() != 9 || !(s1 | s2).is_subset_of(covered)) {
    throw Error(ErrorKind::PreconditionViolated, "A1 and A2 must lie inside a partitioned 9-set");
  }

  for (const auto& part : partition.parts) {
    if (part == a1 || part == a2) {
      throw Error(ErrorKind::PartContainsWholeBlock, "a part equals A1 or A2; no matching induced");
    }
  }

  InducedMatching m;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& part = partition.parts[i];
    std::optional<Point> x, y, z;
    for (Point p : part.points) {
      if (s1.contains(p)) {
        if (x) throw Error(ErrorKind::PreconditionViolated, "part meets A1 twice");
        x = p;
      } else if (s2.contains(p)) {
        if (y) throw Error(ErrorKind::PreconditionViolated, "part meets A2 twice");
        y = p;
      } else {
        z = p;
      }
    }
    if (!x || !y || !z) {
      throw Error(ErrorKind::PreconditionViolated, "every part must meet A1 and A2 once");
    }
    m.edges[i] = MatchingEdge{*x, *y, *z};
  }
  return m;
}

}  // namespace psts::pack
