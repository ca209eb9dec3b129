#include "psts/generators.hpp"

#include <map>
#include <set>

namespace psts::gen {

TripleSystem cyclic_system(const CyclicBase& base) {
  const std::size_t n = base.modulus;
  if (n < 3) throw Error(ErrorKind::PreconditionViolated, "modulus must be at least 3");

  // Development order: each base block through r = 0, 1, ..., n-1, so the
  // reported collision is the first one a hand development would meet.
  std::set<Block> developed;
  std::map<std::pair<Point, Point>, Block> owner;
  std::vector<RawTriple> raw;
  for (const auto& base_block : base.base_blocks) {
    for (std::size_t r = 0; r < n; ++r) {
      const auto b = Block::make(static_cast<Point>((base_block[0] + r) % n),
                                 static_cast<Point>((base_block[1] + r) % n),
                                 static_cast<Point>((base_block[2] + r) % n));
      if (!developed.insert(b).second) continue;
      for (int u = 0; u < 3; ++u) {
        for (int v = u + 1; v < 3; ++v) {
          auto key = std::make_pair(b.points[u], b.points[v]);
          auto [it, fresh] = owner.emplace(key, b);
          if (!fresh) {
            const auto& o = it->second.points;
            throw Error(ErrorKind::DevelopmentCollision,
                        "blocks [" + std::to_string(o[0]) + "," + std::to_string(o[1]) + "," +
                            std::to_string(o[2]) + "] and [" + std::to_string(b.points[0]) + "," +
                            std::to_string(b.points[1]) + "," + std::to_string(b.points[2]) +
                            "] share pair {" + std::to_string(key.first) + "," +
                            std::to_string(key.second) + "}");
          }
        }
      }
      raw.push_back({b.points[0], b.points[1], b.points[2]});
    }
  }
  return validate_system(n, raw);
}

TripleSystem sts13() { return cyclic_system({13, {{0, 1, 4}, {0, 2, 7}}}); }

TripleSystem fano() { return cyclic_system({7, {{0, 1, 3}}}); }

TripleSystem friendship(std::size_t m) {
  if (m < 1) throw Error(ErrorKind::SizeTooSmall, "a friendship graph needs at least one triangle");
  std::vector<RawTriple> raw;
  for (std::size_t i = 0; i < m; ++i) raw.push_back({0, 2 * i + 1, 2 * i + 2});
  return validate_system(2 * m + 1, raw);
}

TripleSystem friendship_chain(std::span<const std::size_t> sizes) {
  const std::size_t k = sizes.size();
  if (k == 0) throw Error(ErrorKind::SizeTooSmall, "a chain needs at least one friendship graph");
  for (auto s : sizes) {
    if (s < 1 || (k >= 2 && s < 2)) {
      throw Error(ErrorKind::SizeTooSmall,
                  "every friendship graph in a chain of length >= 2 needs at least 2 triangles");
    }
  }

  std::vector<std::string> labels;
  std::size_t next_x = 1;
  auto add = [&](std::string label) {
    labels.push_back(std::move(label));
    return labels.size() - 1;
  };
  auto fresh = [&] { return add("x" + std::to_string(next_x++)); };

  std::vector<RawTriple> raw;
  std::size_t incoming = 0;  // point shared with the previous graph
  for (std::size_t i = 0; i < k; ++i) {
    const auto hub = add("h" + std::to_string(i + 1));
    for (std::size_t j = 0; j < sizes[i]; ++j) {
      std::size_t p, q;
      if (i > 0 && j == 0) {
        p = incoming;
        q = fresh();
      } else if (i + 1 < k && j == 1) {
        p = add("s" + std::to_string(i + 1));
        q = fresh();
        incoming = p;
      } else {
        p = fresh();
        q = fresh();
      }
      raw.push_back({hub, p, q});
    }
  }
  const std::size_t n = labels.size();
  return validate_system(n, raw, std::move(labels));
}

std::size_t johnson_schonheim(std::size_t n) {
  if (n == 0) return 0;
  std::size_t bound = (n * ((n - 1) / 2)) / 3;
  if (n % 6 == 5) bound -= 1;
  return bound;
}

RandomSystem random_system(std::size_t n, std::size_t target_blocks, std::uint64_t seed) {
  const auto bound = johnson_schonheim(n);
  if (target_blocks > bound) {
    throw Error(ErrorKind::PreconditionViolated,
                "target " + std::to_string(target_blocks) + " exceeds the bound " +
                    std::to_string(bound) + " for order " + std::to_string(n));
  }
  if (n > kMaxOrder) {
    throw Error(ErrorKind::OrderTooLarge, "order " + std::to_string(n) + " too large");
  }

  std::vector<RawTriple> chosen;
  if (target_blocks > 0) {
    std::vector<RawTriple> triples;
    triples.reserve(n * (n - 1) * (n - 2) / 6);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        for (std::size_t c = b + 1; c < n; ++c) triples.push_back({a, b, c});
    portable_shuffle(triples, seed);

    std::vector<bool> used(n * n, false);
    for (const auto& t : triples) {
      if (chosen.size() == target_blocks) break;
      if (used[t[0] * n + t[1]] || used[t[0] * n + t[2]] || used[t[1] * n + t[2]]) continue;
      used[t[0] * n + t[1]] = used[t[0] * n + t[2]] = used[t[1] * n + t[2]] = true;
      chosen.push_back(t);
    }
  }

  RandomSystem out;
  out.system = validate_system(n, chosen);
  out.requested = target_blocks;
  out.achieved = chosen.size();
  out.saturated = out.achieved < target_blocks;
  return out;
}

}  // namespace psts::gen
