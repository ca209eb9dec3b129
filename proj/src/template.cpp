#include <algorithm>
#include <numeric>

#include "psts/generators.hpp"
#include "psts/packing.hpp"
#include "psts/sequencer.hpp"

namespace psts::seq {

namespace {

/// Admissibility of an arbitrary ordering of a subset of points against `t`.
/// Segments are proper relative to `order`'s own length.
bool order_admissible(std::span<const Point> order, const TripleSystem& t) {
  const std::size_t n = order.size();
  std::vector<PointSet> prefix(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    prefix[i + 1] = prefix[i];
    prefix[i + 1].insert(order[i]);
  }
  for (std::size_t len = 3; len < n; len += 3)
    for (std::size_t s = 0; s + len <= n; ++s)
      if (has_partition(prefix[s + len] - prefix[s], t)) return false;
  return true;
}

using Perm3 = std::array<std::size_t, 3>;

constexpr std::array<Perm3, 6> kPerms3{
    {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

}  // namespace

std::vector<Point> Labeling::template_order() const {
  std::vector<Point> out;
  out.reserve(kTemplate.size());
  for (auto slot : kTemplate) out.push_back(points[slot]);
  return out;
}

Labeling pi_template_instantiate(const TripleSystem& t, std::span<const Block> d) {
  if (t.order() != 12) {
    throw Error(ErrorKind::PreconditionViolated, "the template needs order 12");
  }
  if (d.size() != 3) {
    throw Error(ErrorKind::PreconditionViolated, "the template needs three disjoint blocks");
  }
  PointSet used;
  for (const auto& b : d) {
    if (!t.find_block(b)) throw Error(ErrorKind::PreconditionViolated, "not a block of the system");
    if (b.as_set().intersects(used)) {
      throw Error(ErrorKind::PreconditionViolated, "template blocks must be pairwise disjoint");
    }
    used |= b.as_set();
  }
  const auto extras = (t.points() - used).to_vector();

  Labeling lab;
  std::array<Point, 12> order{};
  std::size_t rank = 0;
  for (const auto& roles : kPerms3) {
    const Block& b1 = d[roles[0]];
    const Block& b2 = d[roles[1]];
    const Block& b3 = d[roles[2]];
    for (const auto& p1 : kPerms3) {
      for (const auto& p2 : kPerms3) {
        for (const auto& p3 : kPerms3) {
          for (const auto& pe : kPerms3) {
            auto& pts = lab.points;
            for (std::size_t i = 0; i < 3; ++i) {
              pts[L1 + i] = b1.points[p1[i]];
              pts[L4 + i] = b2.points[p2[i]];
              pts[L7 + i] = b3.points[p3[i]];
              pts[La + i] = extras[pe[i]];
            }
            for (std::size_t i = 0; i < 12; ++i) order[i] = pts[kTemplate[i]];
            if (order_admissible(order, t)) {
              lab.roles = roles;
              lab.rank = rank;
              return lab;
            }
            ++rank;
          }
        }
      }
    }
  }
  throw Error(ErrorKind::NoAdmissibleLabeling,
              "none of the 46656 labelings of 1,2,4,3,5,7,6,8,a,9,b,c is admissible; either the "
              "system has four disjoint blocks or this is a counterexample worth reporting");
}

Sequence extend(const TripleSystem& t, const PointSet& residual_points,
                std::span<const Point> residual_order, std::optional<std::span<const Point>> tail) {
  const std::size_t n = t.order();
  if (n < 13) throw Error(ErrorKind::PreconditionViolated, "extension needs order at least 13");
  if (residual_points.size() != 12 || !residual_points.is_subset_of(t.points())) {
    throw Error(ErrorKind::PreconditionViolated, "the residual must be 12 points of the system");
  }
  if (residual_order.size() != 12 || PointSet::from_range(residual_order) != residual_points) {
    throw Error(ErrorKind::PreconditionViolated,
                "the residual sequence must order exactly the residual points");
  }

  const auto sub = induced_subsystem(t, residual_points);
  std::vector<Point> local;
  for (Point p : residual_order) {
    auto it = std::lower_bound(sub.to_parent.begin(), sub.to_parent.end(), p);
    local.push_back(static_cast<Point>(it - sub.to_parent.begin()));
  }
  if (!is_admissible(Sequence(local, 12), sub.system)) {
    throw Error(ErrorKind::ResidualNotAdmissible,
                "the residual sequence is not admissible for the residual system");
  }

  std::vector<Point> entries(residual_order.begin(), residual_order.end());
  const auto rest = t.points() - residual_points;
  if (tail) {
    if (PointSet::from_range(*tail) != rest || tail->size() != rest.size()) {
      throw Error(ErrorKind::PreconditionViolated, "the tail must order the remaining points");
    }
    entries.insert(entries.end(), tail->begin(), tail->end());
  } else {
    for (Point p : rest.to_vector()) entries.push_back(p);
  }
  Sequence out(std::move(entries), n);
  if (!is_admissible(out, t)) {
    throw Error(ErrorKind::VerificationFailure,
                "extended sequence is inadmissible; the system has four disjoint blocks or the "
                "residual is not in template form");
  }
  return out;
}

namespace {

/// Number of proper segments of `order` that split into blocks.
std::size_t inadmissible_count(const std::vector<Point>& order, const TripleSystem& t) {
  const std::size_t n = order.size();
  std::vector<PointSet> prefix(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    prefix[i + 1] = prefix[i];
    prefix[i + 1].insert(order[i]);
  }
  std::size_t c = 0;
  for (std::size_t len = 3; len < n; len += 3)
    for (std::size_t s = 0; s + len <= n; ++s)
      if (has_partition(prefix[s + len] - prefix[s], t)) ++c;
  return c;
}

/// First inadmissible segment as [start, start + length), if any.
std::optional<std::pair<std::size_t, std::size_t>> first_inadmissible(
    const std::vector<Point>& order, const TripleSystem& t) {
  const std::size_t n = order.size();
  for (std::size_t len = 3; len < n; len += 3) {
    for (std::size_t s = 0; s + len <= n; ++s) {
      PointSet seg;
      for (std::size_t i = s; i < s + len; ++i) seg.insert(order[i]);
      if (has_partition(seg, t)) return std::pair{s, len};
    }
  }
  return std::nullopt;
}

/// Gap sizes between consecutive packing points: five each when there are
/// enough outside points, otherwise as even as possible.
std::vector<std::size_t> gap_sizes(std::size_t u_count, std::size_t v_count) {
  const std::size_t gaps = u_count - 1;
  std::vector<std::size_t> out(gaps, 0);
  if (gaps == 0) return out;
  if (v_count >= 5 * gaps) {
    std::fill(out.begin(), out.end(), 5);
    return out;
  }
  for (std::size_t i = 0; i < gaps; ++i) out[i] = v_count / gaps + (i < v_count % gaps ? 1 : 0);
  return out;
}

}  // namespace

Sequence interleave_large(const TripleSystem& t, std::size_t k, const InterleaveOptions& options) {
  const std::size_t n = t.order();
  if (k == 0) throw Error(ErrorKind::PreconditionViolated, "packing number must be positive");
  if (n < 15 * k - 5) {
    throw Error(ErrorKind::PreconditionViolated,
                "order " + std::to_string(n) + " is below 15k - 5 = " + std::to_string(15 * k - 5));
  }
  const auto packing = pack::max_disjoint_blocks(t);
  if (packing.nu != k) {
    throw Error(ErrorKind::PreconditionViolated,
                "packing number is " + std::to_string(packing.nu) + ", not " + std::to_string(k));
  }

  std::vector<Point> u;
  PointSet u_set;
  for (const auto& b : packing.witness) {
    for (Point p : b.points) u.push_back(p);
    u_set |= b.as_set();
  }
  const auto v_canonical = (t.points() - u_set).to_vector();
  const auto gaps = gap_sizes(u.size(), v_canonical.size());

  for (std::size_t attempt = 0; attempt < options.retries; ++attempt) {
    auto v = v_canonical;
    if (attempt > 0) gen::portable_shuffle(v, attempt);

    std::vector<Point> order;
    std::vector<bool> is_u;
    std::size_t vi = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      order.push_back(u[i]);
      is_u.push_back(true);
      if (i + 1 < u.size()) {
        for (std::size_t j = 0; j < gaps[i]; ++j) {
          order.push_back(v[vi++]);
          is_u.push_back(false);
        }
      }
    }
    while (vi < v.size()) {
      order.push_back(v[vi++]);
      is_u.push_back(false);
    }

    // Packing points stay put. An outside point of the first offending
    // segment is swapped with an outside point elsewhere, nearest first,
    // whenever that lowers the number of offending segments.
    std::size_t bad = inadmissible_count(order, t);
    for (std::size_t step = 0; bad > 0 && step < 4 * n; ++step) {
      const auto seg = first_inadmissible(order, t);
      if (!seg) break;
      const auto [s, len] = *seg;
      bool improved = false;
      for (std::size_t dist = 1; dist < n && !improved; ++dist) {
        for (std::size_t q = s; q < s + len && !improved; ++q) {
          if (is_u[q]) continue;
          for (std::size_t r : {q + dist, q - dist}) {
            if (r >= n || (r >= s && r < s + len) || is_u[r]) continue;  // q - dist wraps past 0
            std::swap(order[q], order[r]);
            const auto now = inadmissible_count(order, t);
            if (now < bad) {
              bad = now;
              improved = true;
              break;
            }
            std::swap(order[q], order[r]);
          }
        }
      }
      if (!improved) break;
    }
    if (bad > 0) continue;

    Sequence out(order, n);
    if (is_admissible(out, t)) return out;
  }
  throw Error(ErrorKind::RepairFailed, "no admissible interleaving after " +
                                           std::to_string(options.retries) + " attempts");
}

Sts13Certificate verify_sts13_certificate() {
  const auto sts = gen::sts13();
  if (sts.block_count() != 26) {
    throw Error(ErrorKind::CertificateFailure, "cyclic STS(13) does not have 26 blocks");
  }
  Sts13Certificate cert;
  const auto all = sts.points();
  for (Point i = 0; i < 13; ++i) {
    Sts13Entry e;
    e.vertex = i;
    e.exponent = (i + 13 - 11) % 13;
    PointSet cover;
    for (std::size_t j = 0; j < 4; ++j) {
      const auto& q = kSts13Quadruple[j];
      auto b = Block::make(static_cast<Point>((q[0] + e.exponent) % 13),
                           static_cast<Point>((q[1] + e.exponent) % 13),
                           static_cast<Point>((q[2] + e.exponent) % 13));
      if (!sts.find_block(b)) {
        throw Error(ErrorKind::CertificateFailure, "rotated block is not a block of STS(13)");
      }
      if (b.as_set().intersects(cover)) {
        throw Error(ErrorKind::CertificateFailure, "rotated blocks are not disjoint");
      }
      cover |= b.as_set();
      e.blocks[j] = b;
    }
    PointSet expected = all;
    expected.erase(i);
    if (cover != expected) {
      throw Error(ErrorKind::CertificateFailure,
                  "rotated blocks do not cover Z13 minus " + std::to_string(i));
    }
    cert.entries.push_back(e);
  }
  cert.every_sequence_inadmissible = cert.entries.size() == 13;
  return cert;
}

}  // namespace psts::seq
