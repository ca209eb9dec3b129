#include <algorithm>
#include <initializer_list>

#include "psts/packing.hpp"
#include "psts/sequencer.hpp"

namespace psts::seq {

namespace {

using Slots = std::array<Point, 12>;
using Perm3 = std::array<std::size_t, 3>;

constexpr std::array<Perm3, 6> kPerms3{
    {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

/// The labelled points of `head` in order, followed by every other point in
/// canonical order.
Sequence assemble(const TripleSystem& t, const Slots& s, std::initializer_list<Slot> head) {
  std::vector<Point> out;
  PointSet used;
  for (auto slot : head) {
    out.push_back(s[slot]);
    used.insert(s[slot]);
  }
  for (Point p : (t.points() - used).to_vector()) out.push_back(p);
  return Sequence(std::move(out), t.order());
}

void label_block(Slots& s, Slot first, const Block& b, const Perm3& perm = kPerms3[0]) {
  for (std::size_t i = 0; i < 3; ++i) s[first + i] = b.points[perm[i]];
}

[[noreturn]] void recipe_failure(const std::string& what) {
  throw Error(ErrorKind::VerificationFailure, what);
}

// Any two blocks meet.
Sequence intersecting_blocks(const TripleSystem& t) {
  const std::size_t n = t.order();
  if (t.block_count() == 0) return Sequence::identity(n);

  Slots s{};
  const Block& b1 = t.block(0);
  if (t.block_count() == 1) {
    label_block(s, L1, b1);
    if (n == 3) return assemble(t, s, {L1, L2, L3});
    s[La] = *(t.points() - b1.as_set()).first();
    return assemble(t, s, {L1, L2, La, L3});
  }

  // Relabel so that a second block reads [1,a,b].
  const Block& c = t.block(1);
  const auto common = (b1.as_set() & c.as_set()).first();
  if (!common) recipe_failure("intersecting-blocks recipe applied to disjoint blocks");
  s[L1] = *common;
  auto rest1 = (b1.as_set() - c.as_set()).to_vector();
  auto restc = (c.as_set() - b1.as_set()).to_vector();
  s[L2] = rest1[0];
  s[L3] = rest1[1];
  s[La] = restc[0];
  s[Lb] = restc[1];
  if (n == 5) return assemble(t, s, {L1, L2, La, Lb, L3});
  s[Lc] = *(t.points() - b1.as_set() - c.as_set()).first();
  return assemble(t, s, {L1, Lc, L2, L3, La, Lb});
}

bool is_block(const TripleSystem& t, const Slots& s, Slot x, Slot y, Slot z) {
  return t.is_block(s[x], s[y], s[z]);
}

// Exactly two disjoint blocks.
Sequence two_disjoint_blocks(const TripleSystem& t, const std::vector<Block>& d) {
  const std::size_t n = t.order();
  Slots s{};
  if (n == 6) {
    label_block(s, L1, d[0]);
    label_block(s, L4, d[1]);
    return assemble(t, s, {L1, L2, L4, L5, L3, L6});
  }

  const auto outside = (t.points() - d[0].as_set() - d[1].as_set()).to_vector();
  if (n == 7) {
    // Blocks through a must be among [1,4,a], [2,5,a], [3,6,a].
    s[La] = outside[0];
    for (const auto& p1 : kPerms3) {
      for (const auto& p2 : kPerms3) {
        label_block(s, L1, d[0], p1);
        label_block(s, L4, d[1], p2);
        bool ok = true;
        for (std::size_t i = 0; i < 3 && ok; ++i)
          for (std::size_t j = 0; j < 3 && ok; ++j)
            if (i != j && t.is_block(s[L1 + i], s[L4 + j], s[La])) ok = false;
        if (ok) return assemble(t, s, {L1, L2, L4, La, L5, L3, L6});
      }
    }
    recipe_failure("no matching labelling for order 7");
  }

  if (n == 8) {
    // [a,b,x] a block forces x = 1; [3,a,x] a block forces x = 6.
    for (std::size_t swap_roles = 0; swap_roles < 2; ++swap_roles) {
      const Block& b1 = d[swap_roles];
      const Block& b2 = d[1 - swap_roles];
      for (const auto& p1 : kPerms3) {
        for (const auto& p2 : kPerms3) {
          for (std::size_t ea = 0; ea < 2; ++ea) {
            label_block(s, L1, b1, p1);
            label_block(s, L4, b2, p2);
            s[La] = outside[ea];
            s[Lb] = outside[1 - ea];
            if (auto ab = t.block_of_pair(s[La], s[Lb]);
                ab && !t.block(*ab).contains(s[L1])) {
              continue;
            }
            if (auto a3 = t.block_of_pair(s[L3], s[La]); a3 && !t.block(*a3).contains(s[L6])) {
              continue;
            }
            return assemble(t, s, {L1, L2, L4, L3, La, L5, L6, Lb});
          }
        }
      }
    }
    recipe_failure("no admissible labelling for order 8");
  }

  // n > 8: pick A = {a,b,c} outside both blocks; 5 and 6 see no pair of A,
  // and neither [3,5,a] nor [3,a,b] is a block.
  const std::size_t m = outside.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      for (std::size_t k = j + 1; k < m; ++k) {
        const std::array<Point, 3> a{outside[i], outside[j], outside[k]};
        for (std::size_t swap_roles = 0; swap_roles < 2; ++swap_roles) {
          const Block& b1 = d[swap_roles];
          const Block& b2 = d[1 - swap_roles];
          for (const auto& p2 : kPerms3) {
            label_block(s, L4, b2, p2);
            bool pairs_ok = true;
            for (std::size_t x = 0; x < 3 && pairs_ok; ++x)
              for (std::size_t y = x + 1; y < 3 && pairs_ok; ++y)
                if (t.is_block(s[L5], a[x], a[y]) || t.is_block(s[L6], a[x], a[y]))
                  pairs_ok = false;
            if (!pairs_ok) continue;
            for (const auto& p1 : kPerms3) {
              label_block(s, L1, b1, p1);
              for (const auto& pa : kPerms3) {
                s[La] = a[pa[0]];
                s[Lb] = a[pa[1]];
                s[Lc] = a[pa[2]];
                if (is_block(t, s, L3, L5, La) || is_block(t, s, L3, La, Lb)) continue;
                return assemble(t, s, {L1, L2, L4, L3, L5, La, L6, Lb, Lc});
              }
            }
          }
        }
      }
    }
  }
  recipe_failure("no labelling satisfies the two-block constraints");
}

// Order 9, three disjoint blocks.
Sequence three_blocks_order9(const TripleSystem& t, const std::vector<Block>& d) {
  Slots s{};
  label_block(s, L1, d[0]);
  label_block(s, L4, d[1]);
  label_block(s, L7, d[2]);
  if (is_block(t, s, L3, L5, L7)) std::swap(s[L2], s[L3]);
  return assemble(t, s, {L1, L2, L4, L3, L5, L7, L6, L8, L9});
}

bool good_point(const TripleSystem& t, const PointSet& ground, Point p) {
  auto rest = ground;
  rest.erase(p);
  return !has_partition(rest, t);
}

// Order 10, three disjoint blocks.
Sequence three_blocks_order10(const TripleSystem& t, const std::vector<Block>& d) {
  const auto all = t.points();
  Slots s{};
  s[La] = *(all - d[0].as_set() - d[1].as_set() - d[2].as_set()).first();

  auto goods_in = [&](const Block& b) {
    std::size_t c = 0;
    for (Point p : b.points) c += good_point(t, all, p) ? 1 : 0;
    return c;
  };

  std::size_t i3 = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    if (goods_in(d[i]) < 2) {
      i3 = i;
      break;
    }
  }
  const Block& b3 = d[i3];
  s[L9] = b3.points[0];

  // B1 holds no x with [9,x,a] a block.
  std::array<std::size_t, 2> others{};
  for (std::size_t i = 0, k = 0; i < 3; ++i)
    if (i != i3) others[k++] = i;
  std::size_t i1 = others[0], i2 = others[1];
  for (Point x : d[i1].points) {
    if (t.is_block(s[L9], x, s[La])) {
      std::swap(i1, i2);
      break;
    }
  }
  const Block& b1 = d[i1];
  const Block& b2 = d[i2];

  // The bad point of B1, if any, becomes 3.
  std::vector<Point> good1, bad1;
  for (Point p : b1.points) (good_point(t, all, p) ? good1 : bad1).push_back(p);
  if (bad1.size() > 1) recipe_failure("order-10 recipe: B1 has two bad points");
  if (bad1.empty()) {
    s[L1] = good1[0];
    s[L2] = good1[1];
    s[L3] = good1[2];
  } else {
    s[L1] = good1[0];
    s[L2] = good1[1];
    s[L3] = bad1[0];
  }

  const std::array<Point, 2> rest3{b3.points[1], b3.points[2]};
  bool placed = false;
  for (const auto& p2 : kPerms3) {
    for (std::size_t e = 0; e < 2 && !placed; ++e) {
      label_block(s, L4, b2, p2);
      s[L7] = rest3[e];
      s[L8] = rest3[1 - e];
      if (is_block(t, s, L3, L6, L8) || is_block(t, s, L3, L6, L9) || is_block(t, s, L3, L6, La))
        continue;
      placed = true;
    }
    if (placed) break;
  }
  if (!placed) recipe_failure("order-10 recipe: no labelling of B2 and B3");
  if (is_block(t, s, L2, L6, L9)) std::swap(s[L1], s[L2]);

  return assemble(t, s, {L1, L4, L5, L7, L6, L8, L3, L9, La, L2});
}

// Order 11, three disjoint blocks.
Sequence three_blocks_order11(const TripleSystem& t, const std::vector<Block>& d,
                              std::size_t& repairs) {
  const auto all = t.points();
  const auto extra = (all - d[0].as_set() - d[1].as_set() - d[2].as_set()).to_vector();
  Slots s{};
  s[La] = extra[0];
  s[Lb] = extra[1];
  auto without_a = all, without_b = all;
  without_a.erase(s[La]);
  without_b.erase(s[Lb]);

  // 9 is good for both residuals on V \ {a} and V \ {b}.
  std::optional<std::size_t> i3;
  for (std::size_t i = 0; i < 3 && !i3; ++i) {
    for (Point p : d[i].points) {
      if (good_point(t, without_a, p) && good_point(t, without_b, p)) {
        i3 = i;
        s[L9] = p;
        break;
      }
    }
  }
  if (!i3) recipe_failure("order-11 recipe: no point good for both residuals");

  // B1 has two points good for V \ {b}; they become 1 and 2.
  std::optional<std::size_t> i1;
  for (std::size_t i = 0; i < 3 && !i1; ++i) {
    if (i == *i3) continue;
    std::vector<Point> good, other;
    for (Point p : d[i].points) (good_point(t, without_b, p) ? good : other).push_back(p);
    if (good.size() < 2) continue;
    i1 = i;
    s[L1] = good[0];
    s[L2] = good[1];
    s[L3] = good.size() == 3 ? good[2] : other[0];
  }
  if (!i1) recipe_failure("order-11 recipe: no block with two good points");
  const std::size_t i2 = 3 - *i1 - *i3;
  label_block(s, L4, d[i2]);
  std::size_t k = 7;
  for (Point p : d[*i3].points) {
    if (p == s[L9]) continue;
    s[k == 7 ? L7 : L8] = p;
    ++k;
  }

  // Relabelings: first make 3,5,7,6,8,a free of a two-block split, then
  // break whichever of its 3-segments is a block.
  auto six = [&] {
    return PointSet{s[L3], s[L5], s[L7], s[L6], s[L8], s[La]};
  };
  if (has_partition(six(), t)) std::swap(s[L4], s[L5]);
  if (is_block(t, s, L3, L5, L7)) {
    if (!is_block(t, s, L5, L8, La)) {
      std::swap(s[L5], s[L6]);
    } else {
      std::swap(s[L7], s[L8]);
    }
  } else if (is_block(t, s, L6, L8, La)) {
    if (!is_block(t, s, L3, L5, L8)) {
      std::swap(s[L7], s[L8]);
    } else {
      std::swap(s[L5], s[L6]);
    }
  }

  auto seq = assemble(t, s, {Lb, L1, L2, L4, L3, L5, L7, L6, L8, La, L9});
  if (is_admissible(seq, t)) return seq;

  // The explicit rules above can leave a 3-segment block behind (for
  // instance [6,7,a] after swapping 7 and 8). Fall back to the remaining
  // freedom the construction allows: any labelling of B2 and of B3 \ {9}.
  const std::array<Point, 3> b2pts{s[L4], s[L5], s[L6]};
  const std::array<Point, 2> b3pts{s[L7], s[L8]};
  for (const auto& p2 : kPerms3) {
    for (std::size_t e = 0; e < 2; ++e) {
      for (std::size_t i = 0; i < 3; ++i) s[L4 + i] = b2pts[p2[i]];
      s[L7] = b3pts[e];
      s[L8] = b3pts[1 - e];
      seq = assemble(t, s, {Lb, L1, L2, L4, L3, L5, L7, L6, L8, La, L9});
      if (is_admissible(seq, t)) {
        ++repairs;
        return seq;
      }
    }
  }
  recipe_failure("order-11 recipe: no relabelling of B2 and B3 is admissible");
}

Sequence three_blocks_large(const TripleSystem& t, const std::vector<Block>& d) {
  PointSet residual;
  for (const auto& b : d) residual |= b.as_set();
  auto extras = (t.points() - residual).to_vector();
  for (std::size_t i = 0; i < 3; ++i) residual.insert(extras[i]);

  const auto sub = induced_subsystem(t, residual);
  auto to_local = [&](Point p) {
    return static_cast<Point>(std::lower_bound(sub.to_parent.begin(), sub.to_parent.end(), p) -
                              sub.to_parent.begin());
  };
  std::vector<Block> local;
  for (const auto& b : d) local.push_back(Block::make(to_local(b.points[0]), to_local(b.points[1]),
                                                      to_local(b.points[2])));
  const auto lab = pi_template_instantiate(sub.system, local);
  std::vector<Point> order;
  for (Point p : lab.template_order()) order.push_back(sub.to_parent[p]);
  return extend(t, residual, order);
}

Sequence order12_template(const TripleSystem& t, const std::vector<Block>& d) {
  const auto lab = pi_template_instantiate(t, d);
  return Sequence(lab.template_order(), t.order());
}

}  // namespace

Construction construct_with_trace(const TripleSystem& t, std::uint64_t fallback_budget) {
  const std::size_t n = t.order();
  const auto packing = pack::max_disjoint_blocks(t);
  Construction c;
  c.nu = packing.nu;
  const auto& d = packing.witness;

  if (c.nu <= 1) {
    c.method = c.nu == 0 ? "no-blocks" : "intersecting-blocks";
    c.sequence = intersecting_blocks(t);
  } else if (c.nu == 2) {
    c.method = "two-disjoint-blocks";
    c.sequence = two_disjoint_blocks(t, d);
  } else if (c.nu == 3 && n == 9) {
    c.method = "three-blocks-order-9";
    c.sequence = three_blocks_order9(t, d);
  } else if (c.nu == 3 && n == 10) {
    c.method = "three-blocks-order-10";
    c.sequence = three_blocks_order10(t, d);
  } else if (c.nu == 3 && n == 11) {
    c.method = "three-blocks-order-11";
    c.sequence = three_blocks_order11(t, d, c.repairs);
  } else if (c.nu == 3 && n == 12) {
    c.method = "template-order-12";
    c.sequence = order12_template(t, d);
  } else if (c.nu == 3) {
    c.method = "residual-extension";
    c.sequence = three_blocks_large(t, d);
  } else if (n >= 15 * c.nu - 5) {
    c.method = "interleave";
    c.sequence = interleave_large(t, c.nu);
  } else {
    c.method = "exhaustive-search";
    const auto decision = decide(t, {fallback_budget, 1, true});
    if (decision.outcome == Outcome::NotSequenceable) {
      throw Error(ErrorKind::NotSequenceableSystem,
                  "exhaustive search found no admissible sequence (" +
                      std::to_string(decision.budget_spent) + " nodes)");
    }
    if (decision.outcome == Outcome::Unknown) {
      throw Error(ErrorKind::BudgetExhausted,
                  "search budget of " + std::to_string(fallback_budget) + " nodes exhausted");
    }
    c.sequence = *decision.witness;
  }

  if (!is_admissible(c.sequence, t)) {
    throw Error(ErrorKind::VerificationFailure,
                "construction `" + c.method + "` produced an inadmissible sequence");
  }
  return c;
}

Sequence construct(const TripleSystem& t) { return construct_with_trace(t).sequence; }

}  // namespace psts::seq
