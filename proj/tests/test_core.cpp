#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "psts/error.hpp"
#include "psts/generators.hpp"

using namespace psts;
using fixture::hand_block;
using fixture::hand_sequence;
using fixture::hand_set;
using fixture::hand_system;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a psts::Error");
  return ErrorKind::ParseError;
}

std::vector<Point> random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<Point> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace

TEST_CASE("PointSet basics") {
  PointSet s{3, 70, 200};
  CHECK(s.size() == 3);
  CHECK(s.contains(70));
  CHECK_FALSE(s.contains(71));
  CHECK(*s.first() == 3);
  s.erase(3);
  CHECK(*s.first() == 70);
  CHECK(PointSet::prefix(5).size() == 5);
  CHECK(PointSet::prefix(5).to_vector() == std::vector<Point>{0, 1, 2, 3, 4});
  CHECK((PointSet{1, 2} - PointSet{2}) == PointSet{1});
  CHECK(PointSet{1, 2}.is_subset_of(PointSet{1, 2, 3}));
  CHECK_FALSE(PointSet{}.first().has_value());
}

TEST_CASE("Block::make sorts and rejects repeats") {
  auto b = Block::make(5, 1, 3);
  CHECK(b.points == std::array<Point, 3>{1, 3, 5});
  CHECK(b.third(1, 5) == 3);
  CHECK(kind_of([] { Block::make(1, 1, 2); }) == ErrorKind::RepeatedPointInBlock);
}

TEST_CASE("validate_system") {
  SUBCASE("cyclic STS(13) development has 26 blocks") {
    std::vector<RawTriple> raw;
    for (std::size_t r = 0; r < 13; ++r) {
      raw.push_back({r, (r + 1) % 13, (r + 4) % 13});
      raw.push_back({r, (r + 2) % 13, (r + 7) % 13});
    }
    auto t = validate_system(13, raw);
    CHECK(t.order() == 13);
    CHECK(t.block_count() == 26);
  }
  SUBCASE("single block") {
    auto t = hand_system(3, "1 2 3");
    CHECK(t.block_count() == 1);
    CHECK(t.is_block(0, 1, 2));
  }
  SUBCASE("pair in two blocks names both triples") {
    try {
      hand_system(4, "1 2 3\n1 2 4");
      FAIL("expected PairInTwoBlocks");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::PairInTwoBlocks);
      std::string msg = e.what();
      CHECK(msg.find("{1,2}") != std::string::npos);
      CHECK(msg.find("[1,2,3]") != std::string::npos);
      CHECK(msg.find("[1,2,4]") != std::string::npos);
    }
  }
  SUBCASE("point out of range") {
    const std::vector<RawTriple> raw{{0, 1, 5}};
    CHECK(kind_of([&] { validate_system(4, raw); }) == ErrorKind::PointOutOfRange);
  }
  SUBCASE("repeated point") {
    const std::vector<RawTriple> raw{{0, 1, 1}};
    CHECK(kind_of([&] { validate_system(4, raw); }) == ErrorKind::RepeatedPointInBlock);
  }
  SUBCASE("duplicate block is a repeated pair") {
    const std::vector<RawTriple> raw{{0, 1, 2}, {2, 1, 0}};
    CHECK(kind_of([&] { validate_system(4, raw); }) == ErrorKind::PairInTwoBlocks);
  }
  SUBCASE("order limit") {
    CHECK(kind_of([] { validate_system(kMaxOrder + 1, {}); }) == ErrorKind::OrderTooLarge);
  }
  SUBCASE("isolated points and empty systems are fine") {
    auto t = validate_system(5, {});
    CHECK(t.order() == 5);
    CHECK(t.block_count() == 0);
    CHECK(validate_system(0, {}).order() == 0);
  }
  SUBCASE("canonical block order") {
    const std::vector<RawTriple> raw{{4, 5, 3}, {2, 0, 1}};
    auto t = validate_system(6, raw);
    CHECK(t.block(0) == Block::make(0, 1, 2));
    CHECK(t.block(1) == Block::make(3, 4, 5));
    CHECK(*t.block_of_pair(5, 4) == 1);
    CHECK_FALSE(t.block_of_pair(0, 3).has_value());
  }
}

TEST_CASE("induced_subsystem keeps inner blocks only") {
  auto t = hand_system(7, "1 2 3\n3 4 5\n5 6 7");
  auto sub = induced_subsystem(t, hand_set(t, {"1", "2", "3", "4", "5"}));
  CHECK(sub.system.order() == 5);
  CHECK(sub.system.block_count() == 2);
  CHECK(sub.to_parent == std::vector<Point>{0, 1, 2, 3, 4});
  CHECK(sub.system.label(4) == "5");
}

TEST_CASE("with_isolated_points") {
  auto t = hand_system(3, "1 2 3");
  auto u = t.with_isolated_points(2);
  CHECK(u.order() == 5);
  CHECK(u.block_count() == 1);
  CHECK(u.find_label("1").has_value());
  CHECK(u.label(3) != u.label(4));
}

TEST_CASE("Sequence must be a permutation") {
  CHECK(kind_of([] { Sequence({0, 1, 1}, 3); }) == ErrorKind::SequenceNotPermutation);
  CHECK(kind_of([] { Sequence({0, 1}, 3); }) == ErrorKind::SequenceNotPermutation);
  CHECK(kind_of([] { Sequence({0, 1, 3}, 3); }) == ErrorKind::SequenceNotPermutation);
  CHECK(Sequence::identity(3).reversed() == Sequence({2, 1, 0}, 3));
}

TEST_CASE("partition_into_blocks") {
  SUBCASE("two disjoint blocks cover the six points") {
    auto t = hand_system(6, "1 2 3\n4 5 6");
    auto w = partition_into_blocks(t.points(), t);
    REQUIRE(w);
    CHECK(w->parts == std::vector<Block>{hand_block(t, "1", "2", "3"), hand_block(t, "4", "5", "6")});
  }
  SUBCASE("cardinality not a multiple of three") {
    auto t = hand_system(6, "1 2 3\n4 5 6");
    CHECK_FALSE(partition_into_blocks(hand_set(t, {"1", "2", "3", "4"}), t));
    CHECK_FALSE(has_partition(hand_set(t, {"1", "2"}), t));
  }
  SUBCASE("STS(13) without 11") {
    auto t = gen::sts13();
    auto s = t.points();
    s.erase(11);
    auto w = partition_into_blocks(s, t);
    REQUIRE(w);
    std::vector<Block> got = w->parts;
    std::sort(got.begin(), got.end());
    std::vector<Block> want{Block::make(0, 2, 7), Block::make(1, 3, 8), Block::make(4, 10, 12),
                            Block::make(5, 6, 9)};
    CHECK(got == want);
  }
  SUBCASE("empty set partitions trivially") {
    auto t = hand_system(3, "1 2 3");
    auto w = partition_into_blocks(PointSet{}, t);
    REQUIRE(w);
    CHECK(w->parts.empty());
  }
  SUBCASE("branching on the least point is deterministic") {
    auto t = hand_system(9, "1 2 3\n4 5 6\n7 8 9\n1 4 7\n2 5 8\n3 6 9");
    auto w = partition_into_blocks(t.points(), t);
    REQUIRE(w);
    CHECK(w->parts.front() == hand_block(t, "1", "2", "3"));
    std::size_t count = for_each_partition(t.points(), t, [](const PartitionWitness&) { return true; });
    CHECK(count == 2);
  }
}

TEST_CASE("inadmissible_segments") {
  SUBCASE("leading block") {
    auto t = hand_system(4, "1 2 3");
    auto bad = inadmissible_segments(Sequence::identity(4), t);
    REQUIRE(bad.size() == 1);
    CHECK(bad[0].segment == Segment{0, 3, true});
    CHECK(bad[0].witness.parts == std::vector<Block>{hand_block(t, "1", "2", "3")});
  }
  SUBCASE("three disjoint blocks in the order-9 pattern") {
    auto t = hand_system(9, "1 2 3\n4 5 6\n7 8 9");
    CHECK(inadmissible_segments(hand_sequence(t, "1 2 4 3 5 7 6 8 9"), t).empty());
  }
  SUBCASE("every STS(13) ordering has both 12-segments inadmissible") {
    auto t = gen::sts13();
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
      Sequence seq(random_permutation(13, rng), 13);
      auto bad = inadmissible_segments(seq, t);
      bool head = false, tail = false;
      for (const auto& b : bad) {
        head = head || (b.segment.start == 0 && b.segment.length == 12);
        tail = tail || (b.segment.start == 1 && b.segment.length == 12);
      }
      CHECK(head);
      CHECK(tail);
      auto ints = oracle::to_ints(seq);
      auto blocks = oracle::triples_of(t);
      CHECK(oracle::partitionable({ints.begin(), ints.end() - 1}, blocks));
      CHECK(oracle::partitionable({ints.begin() + 1, ints.end()}, blocks));
    }
  }
  SUBCASE("witnesses cover their segment exactly") {
    auto t = gen::fano();
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
      Sequence seq(random_permutation(7, rng), 7);
      for (const auto& b : inadmissible_segments(seq, t)) {
        CHECK(b.segment.proper);
        CHECK(b.segment.length % 3 == 0);
        CHECK(b.witness.covered() == segment_points(seq, b.segment));
        PointSet seen;
        for (const auto& part : b.witness.parts) {
          CHECK(t.find_block(part).has_value());
          CHECK_FALSE(part.as_set().intersects(seen));
          seen |= part.as_set();
        }
      }
    }
  }
}

TEST_CASE("is_admissible") {
  SUBCASE("the whole sequence is not a proper segment") {
    auto t = hand_system(3, "1 2 3");
    CHECK(is_admissible(Sequence::identity(3), t));
  }
  SUBCASE("order 9 pattern unless 3,5,7 is a block") {
    auto t = hand_system(9, "1 2 3\n4 5 6\n7 8 9");
    CHECK(is_admissible(hand_sequence(t, "1 2 4 3 5 7 6 8 9"), t));
    auto u = hand_system(9, "1 2 3\n4 5 6\n7 8 9\n3 5 7");
    CHECK_FALSE(is_admissible(hand_sequence(u, "1 2 4 3 5 7 6 8 9"), u));
  }
  SUBCASE("STS(13) identity") {
    CHECK_FALSE(is_admissible(Sequence::identity(13), gen::sts13()));
  }
}

TEST_CASE("admissibility agrees with the block-subset oracle") {
  std::mt19937_64 rng(2024);
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const std::size_t n = 6 + seed % 7;
    const std::size_t target = std::min<std::size_t>(8, seed % 9);
    auto sys = gen::random_system(n, std::min(target, gen::johnson_schonheim(n)), seed).system;
    REQUIRE(sys.block_count() <= 8);
    auto blocks = oracle::triples_of(sys);
    for (int trial = 0; trial < 20; ++trial) {
      Sequence seq(random_permutation(n, rng), n);
      const bool oracle_ok = oracle::admissible(oracle::to_ints(seq), blocks);
      CHECK(is_admissible(seq, sys) == oracle_ok);
      CHECK(inadmissible_segments(seq, sys).empty() == oracle_ok);
    }
  }
}

TEST_CASE("partition counts agree with the oracle") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 9 + seed % 4;
    auto sys = gen::random_system(n, gen::johnson_schonheim(n), seed).system;
    auto blocks = oracle::triples_of(sys);
    for (const auto& s : oracle::subsets(static_cast<int>(n), 6)) {
      auto ps = oracle::to_point_set(s);
      std::size_t mine = for_each_partition(ps, sys, [](const PartitionWitness&) { return true; });
      CHECK(mine == oracle::partition_count(s, blocks));
      CHECK(has_partition(ps, sys) == (mine > 0));
      if (auto w = partition_into_blocks(ps, sys)) CHECK(w->covered() == ps);
    }
  }
}

TEST_CASE("reversal preserves admissibility") {
  std::mt19937_64 rng(99);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 7 + seed % 8;
    auto sys = gen::random_system(n, gen::johnson_schonheim(n) / 2, seed).system;
    for (int trial = 0; trial < 30; ++trial) {
      Sequence seq(random_permutation(n, rng), n);
      CHECK(is_admissible(seq, sys) == is_admissible(seq.reversed(), sys));
    }
  }
}

TEST_CASE("6-sets with a two-block partition") {
  // Unique partition, no third block inside, and no two-block partition
  // after swapping any one point for an outside point.
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 8 + seed % 5;
    auto sys = gen::random_system(n, gen::johnson_schonheim(n), seed + 500).system;
    auto blocks = oracle::triples_of(sys);
    for (const auto& s : oracle::subsets(static_cast<int>(n), 6)) {
      if (!oracle::partitionable(s, blocks)) continue;
      CHECK(oracle::partition_count(s, blocks) == 1);
      std::size_t inside = 0;
      for (const auto& b : blocks)
        if (s.count(b[0]) && s.count(b[1]) && s.count(b[2])) ++inside;
      CHECK(inside == 2);
      for (int out = 0; out < static_cast<int>(n); ++out) {
        if (s.count(out)) continue;
        for (int in : s) {
          auto moved = s;
          moved.erase(in);
          moved.insert(out);
          CHECK_FALSE(has_partition(oracle::to_point_set(moved), sys));
        }
      }
    }
  }
}
