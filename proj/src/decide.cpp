#include <atomic>
#include <limits>
#include <mutex>
#include <thread>

#include "psts/sequencer.hpp"

namespace psts::seq {

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Sequenceable: return "Sequenceable";
    case Outcome::NotSequenceable: return "NotSequenceable";
    case Outcome::Unknown: return "Unknown";
  }
  return "Unknown";
}

namespace {

constexpr std::size_t kNoBranch = std::numeric_limits<std::size_t>::max();

struct SharedState {
  std::uint64_t budget = 0;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> budget_hit{false};
  std::atomic<std::size_t> next_branch{0};
  std::atomic<std::size_t> best_branch{kNoBranch};
  std::mutex mu;
  std::optional<Sequence> witness;
};

/// Prefix search rooted at a fixed first point. `Enumerate` keeps going
/// after complete sequences and only counts them.
template <bool Enumerate>
class PrefixSearch {
 public:
  PrefixSearch(const TripleSystem& t, SharedState& shared, std::size_t branch)
      : t_(t), n_(t.order()), shared_(shared), branch_(branch), prefix_(n_), masks_(n_ + 1), all_(t.points()) {}

  /// Returns true once the search must stop (witness found, cancelled or
  /// out of budget).
  bool run() { return place(0, static_cast<Point>(branch_)); }

  std::uint64_t complete() const { return complete_; }
  const std::vector<Point>& prefix() const { return prefix_; }
  const std::optional<std::vector<Point>>& first() const { return first_; }

 private:
  bool charge() {
    if constexpr (!Enumerate) {
      if (shared_.best_branch.load(std::memory_order_relaxed) < branch_) return false;
    }
    auto before = shared_.nodes.fetch_add(1, std::memory_order_relaxed);
    if (before >= shared_.budget) {
      shared_.nodes.fetch_sub(1, std::memory_order_relaxed);
      shared_.budget_hit.store(true, std::memory_order_relaxed);
      return false;
    }
    return true;
  }

  /// Proper segments ending at position depth - 1 that split into blocks.
  /// The unplaced points always form the final segment, so they are checked
  /// as well.
  bool prefix_ok(std::size_t depth) const {
    for (std::size_t len = 3; len <= depth && len < n_; len += 3) {
      if (has_partition(masks_[depth] - masks_[depth - len], t_)) return false;
    }
    const std::size_t left = n_ - depth;
    if (left > 0 && left % 3 == 0 && has_partition(all_ - masks_[depth], t_)) return false;
    return true;
  }

  bool place(std::size_t depth, Point p) {
    if (!charge()) return true;
    prefix_[depth] = p;
    masks_[depth + 1] = masks_[depth];
    masks_[depth + 1].insert(p);
    if (!prefix_ok(depth + 1)) return false;
    if (depth + 1 == n_) {
      ++complete_;
      if constexpr (Enumerate) {
        if (!first_) first_ = prefix_;
        return false;
      } else {
        return true;
      }
    }
    for (Point q = 0; q < n_; ++q) {
      if (masks_[depth + 1].contains(q)) continue;
      if (place(depth + 1, q)) return true;
    }
    return false;
  }

  const TripleSystem& t_;
  std::size_t n_;
  SharedState& shared_;
  std::size_t branch_;
  std::vector<Point> prefix_;
  std::vector<PointSet> masks_;
  PointSet all_;
  std::uint64_t complete_ = 0;
  std::optional<std::vector<Point>> first_;
};

void decide_worker(const TripleSystem& t, SharedState& shared) {
  const std::size_t n = t.order();
  for (;;) {
    auto branch = shared.next_branch.fetch_add(1);
    if (branch >= n || branch > shared.best_branch.load()) return;
    if (shared.budget_hit.load()) return;
    PrefixSearch<false> search(t, shared, branch);
    search.run();
    if (search.complete() > 0) {
      std::lock_guard lock(shared.mu);
      if (branch < shared.best_branch.load()) {
        shared.best_branch.store(branch);
        shared.witness = Sequence(search.prefix(), n);
      }
    }
  }
}

}  // namespace

Decision decide(const TripleSystem& t, const DecideOptions& options) {
  Decision d;
  const std::size_t n = t.order();
  if (n == 0) {
    d.outcome = Outcome::Sequenceable;
    d.witness = Sequence({}, 0);
    return d;
  }

  SharedState shared;
  shared.budget = options.budget;
  unsigned workers = options.deterministic ? 1U : std::max(1U, options.parallel);
  workers = std::min<unsigned>(workers, static_cast<unsigned>(n));
  if (workers == 1) {
    decide_worker(t, shared);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back([&] { decide_worker(t, shared); });
  }

  d.budget_spent = shared.nodes.load();
  if (shared.witness) {
    if (!is_admissible(*shared.witness, t)) {
      throw Error(ErrorKind::VerificationFailure, "search witness failed the admissibility check");
    }
    d.outcome = Outcome::Sequenceable;
    d.witness = std::move(shared.witness);
  } else if (shared.budget_hit.load()) {
    d.outcome = Outcome::Unknown;
  } else {
    d.outcome = Outcome::NotSequenceable;
    d.certificate = SearchCertificate{d.budget_spent, true};
  }
  return d;
}

Enumeration enumerate_admissible(const TripleSystem& t, std::uint64_t budget) {
  Enumeration e;
  const std::size_t n = t.order();
  if (n == 0) {
    e.admissible = 1;
    e.exhausted = true;
    e.first = Sequence({}, 0);
    return e;
  }
  SharedState shared;
  shared.budget = budget;
  for (std::size_t branch = 0; branch < n && !shared.budget_hit.load(); ++branch) {
    PrefixSearch<true> search(t, shared, branch);
    search.run();
    e.admissible += search.complete();
    if (!e.first && search.first()) e.first = Sequence(*search.first(), n);
  }
  e.nodes_explored = shared.nodes.load();
  e.exhausted = !shared.budget_hit.load();
  return e;
}

}  // namespace psts::seq
