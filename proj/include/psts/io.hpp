#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "psts/core.hpp"

namespace psts::io {

/// Text format:
///
///     order N
///     # points: l0 l1 ... l(N-1)     (optional label directive)
///     x y z                          (one block per line)
///
/// `#` starts a comment. Without a label directive, labels are resolved as
/// follows: if every block token is a decimal integer in [0, N) and 0 occurs,
/// the token is the index; if they all lie in [1, N] labels are "1".."N";
/// otherwise labels are numbered by first appearance and the remaining
/// isolated points get fresh labels.
TripleSystem parse_psts(std::string_view text);

/// {"order": N, "blocks": [[l1, l2, l3], ...], "points": [...]?}
TripleSystem parse_system_json(const nlohmann::json& doc);

/// Dispatches on the first non-blank character ('{' selects JSON).
TripleSystem parse_system(std::string_view text);
TripleSystem read_system_file(const std::string& path);

std::string write_psts(const TripleSystem& t);
nlohmann::json system_to_json(const TripleSystem& t);

/// Whitespace or comma separated labels, or a JSON array of labels.
Sequence parse_sequence(std::string_view text, const TripleSystem& t);
Sequence read_sequence_file(const std::string& path, const TripleSystem& t);

std::string sequence_to_string(const Sequence& seq, const TripleSystem& t);
nlohmann::json sequence_to_json(const Sequence& seq, const TripleSystem& t);
nlohmann::json block_to_json(const Block& b, const TripleSystem& t);
nlohmann::json blocks_to_json(std::span<const Block> blocks, const TripleSystem& t);

std::string read_file(const std::string& path);

}  // namespace psts::io
