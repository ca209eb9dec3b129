#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "psts/core.hpp"
#include "psts/io.hpp"

namespace fixture {

/// Labels 1..9 then a, b, c, ... so systems can be written in the usual
/// hand notation.
inline std::vector<std::string> hand_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(i < 9 ? std::to_string(i + 1) : std::string(1, static_cast<char>('a' + (i - 9))));
  return out;
}

/// `blocks` holds one block per line, e.g. "1 2 3\n4 5 6".
inline psts::TripleSystem hand_system(std::size_t n, std::string_view blocks) {
  std::string text = "order " + std::to_string(n) + "\n# points:";
  for (const auto& l : hand_labels(n)) text += " " + l;
  text += "\n";
  text += blocks;
  return psts::io::parse_psts(text);
}

inline psts::Point pt(const psts::TripleSystem& t, std::string_view label) {
  return *t.find_label(label);
}

inline psts::Sequence hand_sequence(const psts::TripleSystem& t, std::string_view labels) {
  return psts::io::parse_sequence(labels, t);
}

inline psts::PointSet hand_set(const psts::TripleSystem& t, std::initializer_list<std::string_view> labels) {
  psts::PointSet s;
  for (auto l : labels) s.insert(pt(t, l));
  return s;
}

inline psts::Block hand_block(const psts::TripleSystem& t, std::string_view x, std::string_view y,
                              std::string_view z) {
  return psts::Block::make(pt(t, x), pt(t, y), pt(t, z));
}

}  // namespace fixture
