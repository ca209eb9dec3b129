#include <doctest.h>

#include "fixtures.hpp"
#include "psts/error.hpp"
#include "psts/generators.hpp"
#include "psts/io.hpp"

using namespace psts;

namespace {

ErrorKind parse_error_kind(std::string_view text, std::string* message = nullptr) {
  try {
    io::parse_system(text);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.kind();
  }
  FAIL("expected a parse failure");
  return ErrorKind::ParseError;
}

}  // namespace

TEST_CASE("parse_psts with zero-based indices") {
  auto t = io::parse_psts("order 5\n# a comment\n0 1 2   # trailing\n\n2 3 4\n");
  CHECK(t.order() == 5);
  CHECK(t.block_count() == 2);
  CHECK(t.labels() == default_labels(5));
  CHECK(t.is_block(2, 3, 4));
}

TEST_CASE("parse_psts with one-based labels") {
  auto t = io::parse_psts("order 4\n1 2 3\n");
  CHECK(t.labels() == std::vector<std::string>{"1", "2", "3", "4"});
  CHECK(t.is_block(0, 1, 2));
}

TEST_CASE("parse_psts with symbolic labels pads isolated points") {
  auto t = io::parse_psts("order 5\nx y z\n");
  CHECK(t.label(0) == "x");
  CHECK(t.label(2) == "z");
  CHECK(t.find_label("iso1").has_value());
  CHECK(t.find_label("iso2").has_value());
}

TEST_CASE("points directive fixes the label table") {
  auto t = io::parse_psts("order 4\n# points: d c b a\na b c\n");
  CHECK(t.label(0) == "d");
  CHECK(*t.find_label("a") == 3);
  CHECK(t.is_block(1, 2, 3));
}

TEST_CASE("parse errors carry line numbers") {
  std::string msg;
  CHECK(parse_error_kind("order 4\n1 2\n", &msg) == ErrorKind::ParseError);
  CHECK(msg.find("line 2") != std::string::npos);
  CHECK(parse_error_kind("orde 4\n") == ErrorKind::ParseError);
  CHECK(parse_error_kind("order x\n") == ErrorKind::ParseError);
  CHECK(parse_error_kind("order 4\n1 2 3\n1 2 4\n", &msg) == ErrorKind::PairInTwoBlocks);
  CHECK(parse_error_kind("order 4\n1 1 3\n") == ErrorKind::RepeatedPointInBlock);
  CHECK(parse_error_kind("order 3\na b c\nd e f\n") == ErrorKind::PointOutOfRange);
  CHECK(parse_error_kind("order 3\n# points: a a b\n") == ErrorKind::ParseError);
  CHECK(parse_error_kind("order 3\n# points: a b\n") == ErrorKind::ParseError);
  CHECK(parse_error_kind("order 300\n") == ErrorKind::OrderTooLarge);
}

TEST_CASE("JSON mirror") {
  auto t = io::parse_system(R"({"order": 6, "blocks": [[1,2,3],[4,5,6]]})");
  CHECK(t.order() == 6);
  CHECK(t.block_count() == 2);
  CHECK(t.label(0) == "1");
  auto u = io::parse_system(R"({"order": 4, "blocks": [["a","b","c"]], "points": ["a","b","c","d"]})");
  CHECK(u.label(3) == "d");
  CHECK(io::parse_system(io::system_to_json(u).dump()) == u);
  CHECK(io::parse_system(R"({"order": 4})").block_count() == 0);
  CHECK(parse_error_kind(R"({"order": -4, "blocks": []})") == ErrorKind::ParseError);
  CHECK(parse_error_kind(R"({"blocks": []})") == ErrorKind::ParseError);
  CHECK(parse_error_kind(R"({"order": 4, "blocks": [[1,2]]})") == ErrorKind::ParseError);
  CHECK(parse_error_kind("{ not json") == ErrorKind::ParseError);
}

TEST_CASE("sequences in both notations") {
  auto t = fixture::hand_system(12, "1 2 3\n4 5 6\n7 8 9");
  auto a = io::parse_sequence("1 2 4 3 5 7 6 8 a 9 b c", t);
  auto b = io::parse_sequence(R"(["1","2","4","3","5","7","6","8","a","9","b","c"])", t);
  auto c = io::parse_sequence("1,2,4,3,5,7,6,8,a,9,b,c # comment\n", t);
  CHECK(a == b);
  CHECK(a == c);
  CHECK(io::sequence_to_string(a, t) == "1,2,4,3,5,7,6,8,a,9,b,c");
  CHECK(io::sequence_to_json(a, t).dump() == R"(["1","2","4","3","5","7","6","8","a","9","b","c"])");
  auto numeric = fixture::hand_system(6, "1 2 3");
  CHECK(io::parse_sequence("[1,2,3,4,5,6]", numeric) == Sequence::identity(6));

  try {
    io::parse_sequence("1 2 3 4 5 6 7 8 9 a b z", t);
    FAIL("unknown label accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SequenceNotPermutation);
  }
  try {
    io::parse_sequence("1 2 3", t);
    FAIL("short sequence accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SequenceNotPermutation);
  }
}

TEST_CASE("generated systems round-trip through both formats") {
  std::vector<TripleSystem> systems{gen::sts13(), gen::fano(), gen::friendship(4)};
  const std::vector<std::size_t> sizes{2, 3, 2};
  systems.push_back(gen::friendship_chain(sizes));
  systems.push_back(gen::friendship_chain(sizes).with_isolated_points(4));
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 3 + seed % 18;
    systems.push_back(gen::random_system(n, gen::johnson_schonheim(n) * (seed % 4) / 3, seed).system);
  }
  for (const auto& t : systems) {
    auto text = io::write_psts(t);
    CHECK(io::parse_system(text) == t);
    CHECK(io::parse_system(io::system_to_json(t).dump(2)) == t);
  }
}
