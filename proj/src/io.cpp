#include "psts/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace psts::io {

namespace {

std::string_view trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_tokens(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == ',') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

/// Canonical decimal (no sign, no leading zeros).
std::optional<std::size_t> as_index(const std::string& token) {
  if (token.empty() || (token.size() > 1 && token[0] == '0')) return std::nullopt;
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
  return v;
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what);
}

struct LabelledBlock {
  std::array<std::string, 3> labels;
  std::size_t line = 0;
};

TripleSystem resolve(std::size_t n, const std::vector<LabelledBlock>& blocks,
                     std::optional<std::vector<std::string>> declared) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, std::size_t> index;

  auto index_all = [&] {
    for (std::size_t i = 0; i < labels.size(); ++i) index.emplace(labels[i], i);
  };

  if (declared) {
    if (declared->size() != n) {
      throw Error(ErrorKind::ParseError, "points directive lists " +
                                             std::to_string(declared->size()) +
                                             " labels for order " + std::to_string(n));
    }
    labels = std::move(*declared);
    index_all();
  } else {
    bool zero_based = true, one_based = true, saw_zero = false;
    for (const auto& b : blocks) {
      for (const auto& l : b.labels) {
        auto v = as_index(l);
        if (!v || *v >= n) zero_based = false;
        if (!v || *v < 1 || *v > n) one_based = false;
        if (v && *v == 0) saw_zero = true;
      }
    }
    // Without a 0 token the 1..N reading wins, which matches hand notation.
    if (zero_based && (saw_zero || !one_based || blocks.empty())) {
      labels = default_labels(n);
      index_all();
    } else if (one_based) {
      for (std::size_t i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
      index_all();
    } else {
      for (const auto& b : blocks) {
        for (const auto& l : b.labels) {
          if (index.count(l)) continue;
          if (labels.size() == n) {
            throw Error(ErrorKind::PointOutOfRange, "line " + std::to_string(b.line) +
                                                        ": more than " + std::to_string(n) +
                                                        " distinct labels");
          }
          index.emplace(l, labels.size());
          labels.push_back(l);
        }
      }
      std::size_t fresh = 1;
      while (labels.size() < n) {
        std::string l;
        do {
          l = "iso" + std::to_string(fresh++);
        } while (index.count(l));
        index.emplace(l, labels.size());
        labels.push_back(l);
      }
    }
  }

  std::vector<RawTriple> raw;
  raw.reserve(blocks.size());
  for (const auto& b : blocks) {
    RawTriple r{};
    for (int k = 0; k < 3; ++k) {
      auto it = index.find(b.labels[k]);
      if (it == index.end()) {
        throw Error(ErrorKind::PointOutOfRange,
                    "line " + std::to_string(b.line) + ": unknown point " + b.labels[k]);
      }
      r[k] = it->second;
    }
    raw.push_back(r);
  }
  return validate_system(n, raw, std::move(labels));
}

std::string json_label(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_unsigned() || v.is_number_integer()) return std::to_string(v.get<long long>());
  throw Error(ErrorKind::ParseError, "labels must be strings or integers");
}

}  // namespace

TripleSystem parse_psts(std::string_view text) {
  std::optional<std::size_t> order;
  std::optional<std::vector<std::string>> declared;
  std::vector<LabelledBlock> blocks;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;

    auto hash = line.find('#');
    if (hash != std::string_view::npos) {
      auto comment = trim(line.substr(hash + 1));
      if (comment.starts_with("points:")) {
        if (declared) parse_error(line_no, "duplicate points directive");
        auto tokens = split_tokens(comment.substr(7));
        declared = std::vector<std::string>(tokens.begin(), tokens.end());
      }
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    auto tokens = split_tokens(line);
    if (!order) {
      if (tokens.size() != 2 || tokens[0] != "order") {
        parse_error(line_no, "expected `order N` before any block");
      }
      auto v = as_index(tokens[1]);
      if (!v) parse_error(line_no, "invalid order `" + tokens[1] + "`");
      order = v.value_or(0);
      continue;
    }
    if (tokens.size() != 3) {
      parse_error(line_no, "a block needs exactly 3 points, got " + std::to_string(tokens.size()));
    }
    blocks.push_back({{tokens[0], tokens[1], tokens[2]}, line_no});
  }
  if (!order) throw Error(ErrorKind::ParseError, "missing `order N` line");
  return resolve(*order, blocks, std::move(declared));
}

TripleSystem parse_system_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("order") || !doc["order"].is_number_unsigned()) {
    throw Error(ErrorKind::ParseError, "JSON system needs a non-negative integer \"order\"");
  }
  auto n = doc["order"].get<std::size_t>();
  std::vector<LabelledBlock> blocks;
  if (doc.contains("blocks")) {
    std::size_t i = 0;
    for (const auto& b : doc["blocks"]) {
      ++i;
      if (!b.is_array() || b.size() != 3) {
        throw Error(ErrorKind::ParseError,
                    "block " + std::to_string(i) + " must be an array of 3 labels");
      }
      blocks.push_back({{json_label(b[0]), json_label(b[1]), json_label(b[2])}, i});
    }
  }
  std::optional<std::vector<std::string>> declared;
  if (doc.contains("points")) {
    declared.emplace();
    for (const auto& l : doc["points"]) declared->push_back(json_label(l));
  }
  return resolve(n, blocks, std::move(declared));
}

TripleSystem parse_system(std::string_view text) {
  auto t = trim(text);
  if (!t.empty() && t.front() == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(t);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorKind::ParseError, e.what());
    }
    return parse_system_json(doc);
  }
  return parse_psts(text);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

TripleSystem read_system_file(const std::string& path) { return parse_system(read_file(path)); }

std::string write_psts(const TripleSystem& t) {
  // The directive is only written when reading the blocks alone would
  // resolve to a different label table.
  std::vector<LabelledBlock> bare;
  for (const auto& b : t.blocks())
    bare.push_back({{t.label(b.points[0]), t.label(b.points[1]), t.label(b.points[2])}, 0});
  bool inferred = false;
  try {
    inferred = resolve(t.order(), bare, std::nullopt).labels() == t.labels();
  } catch (const Error&) {
  }

  std::ostringstream os;
  os << "order " << t.order() << "\n";
  if (!inferred) {
    os << "# points:";
    for (const auto& l : t.labels()) os << ' ' << l;
    os << "\n";
  }
  for (const auto& b : t.blocks()) {
    os << t.label(b.points[0]) << ' ' << t.label(b.points[1]) << ' ' << t.label(b.points[2])
       << "\n";
  }
  return os.str();
}

nlohmann::json block_to_json(const Block& b, const TripleSystem& t) {
  return nlohmann::json::array({t.label(b.points[0]), t.label(b.points[1]), t.label(b.points[2])});
}

nlohmann::json blocks_to_json(std::span<const Block> blocks, const TripleSystem& t) {
  auto arr = nlohmann::json::array();
  for (const auto& b : blocks) arr.push_back(block_to_json(b, t));
  return arr;
}

nlohmann::json system_to_json(const TripleSystem& t) {
  nlohmann::json doc;
  doc["order"] = t.order();
  doc["points"] = t.labels();
  doc["blocks"] = blocks_to_json(t.blocks(), t);
  return doc;
}

Sequence parse_sequence(std::string_view text, const TripleSystem& t) {
  std::vector<std::string> tokens;
  auto body = trim(text);
  if (!body.empty() && body.front() == '[') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorKind::ParseError, e.what());
    }
    for (const auto& v : doc) tokens.push_back(json_label(v));
  } else {
    std::string stripped;
    std::size_t pos = 0;
    while (pos <= body.size()) {
      auto nl = body.find('\n', pos);
      if (nl == std::string_view::npos) nl = body.size();
      auto line = body.substr(pos, nl - pos);
      stripped.append(line.substr(0, line.find('#')));
      stripped.push_back(' ');
      pos = nl + 1;
    }
    tokens = split_tokens(stripped);
  }
  std::vector<Point> entries;
  entries.reserve(tokens.size());
  for (const auto& tok : tokens) {
    auto p = t.find_label(tok);
    if (!p) throw Error(ErrorKind::SequenceNotPermutation, "unknown point " + tok);
    entries.push_back(*p);
  }
  return Sequence(std::move(entries), t.order());
}

Sequence read_sequence_file(const std::string& path, const TripleSystem& t) {
  return parse_sequence(read_file(path), t);
}

std::string sequence_to_string(const Sequence& seq, const TripleSystem& t) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out.push_back(',');
    out += t.label(seq[i]);
  }
  return out;
}

nlohmann::json sequence_to_json(const Sequence& seq, const TripleSystem& t) {
  auto arr = nlohmann::json::array();
  for (auto p : seq.entries()) arr.push_back(t.label(p));
  return arr;
}

}  // namespace psts::io
