#include "pgblock/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "pgblock/constructions.hpp"

namespace pgblock {

const char* to_string(SearchMode mode) {
  return mode == SearchMode::Exhaustive ? "exhaustive" : "branch_and_bound";
}

std::optional<SearchMode> parse_search_mode(std::string_view text) {
  if (text == "exhaustive") return SearchMode::Exhaustive;
  if (text == "branch_and_bound" || text == "branch-and-bound" || text == "bnb") {
    return SearchMode::BranchAndBound;
  }
  return std::nullopt;
}

CoverInstance::CoverInstance(const GeometryContext& ctx, int k) : table_(&ctx.incidence(k)) {}

Bitset CoverInstance::all_targets() const {
  Bitset b(num_targets());
  b.set_all();
  return b;
}

Bitset CoverInstance::all_elements() const {
  Bitset b(num_elements());
  b.set_all();
  return b;
}

namespace {

template <typename Fn>
void for_each_common(const Bitset& a, const Bitset& b, Fn&& fn) {
  const std::uint64_t* x = a.data();
  const std::uint64_t* y = b.data();
  for (std::size_t wi = 0; wi < a.num_words(); ++wi) {
    std::uint64_t w = x[wi] & y[wi];
    while (w) {
      fn((wi << 6) + static_cast<std::size_t>(std::countr_zero(w)));
      w &= w - 1;
    }
  }
}

}  // namespace

int CoverInstance::lower_bound(const Bitset& uncovered, const Bitset& allowed) const {
  const std::size_t remaining = uncovered.count();
  if (remaining == 0) return 0;

  thread_local std::vector<std::size_t> cov;
  cov.assign(num_elements(), 0);
  std::size_t max_cov = 0;
  allowed.for_each([&](std::size_t e) {
    cov[e] = table_->covered_by(e).count_and(uncovered);
    max_cov = std::max(max_cov, cov[e]);
  });
  if (max_cov == 0) return kInfeasible;

  // Each target charges 1 / (best coverage among its blockers); any cover
  // pays at most 1 per chosen element.
  double weighted = 0.0;
  bool infeasible = false;
  thread_local std::vector<std::pair<std::size_t, std::size_t>> by_degree;
  by_degree.clear();
  uncovered.for_each([&](std::size_t t) {
    std::size_t best = 0;
    std::size_t degree = 0;
    for_each_common(table_->blockers(t), allowed, [&](std::size_t e) {
      best = std::max(best, cov[e]);
      ++degree;
    });
    if (best == 0) {
      infeasible = true;
      return;
    }
    weighted += 1.0 / static_cast<double>(best);
    by_degree.emplace_back(degree, t);
  });
  if (infeasible) return kInfeasible;

  const int simple = static_cast<int>((remaining + max_cov - 1) / max_cov);
  const int fractional = static_cast<int>(std::ceil(weighted - 1e-9));

  // Targets with pairwise disjoint blocker sets each need their own element.
  std::sort(by_degree.begin(), by_degree.end());
  Bitset used(num_elements());
  int packing = 0;
  for (const auto& [degree, t] : by_degree) {
    const Bitset& bl = table_->blockers(t);
    bool clash = false;
    for_each_common(bl, allowed, [&](std::size_t e) { clash = clash || used.test(e); });
    if (clash) continue;
    for_each_common(bl, allowed, [&](std::size_t e) { used.set(e); });
    ++packing;
  }

  return std::max({simple, fractional, packing});
}

namespace {

using Clock = std::chrono::steady_clock;

struct Budget {
  std::optional<Clock::time_point> deadline;
  std::atomic<bool> expired{false};

  bool check() {
    if (expired.load(std::memory_order_relaxed)) return true;
    if (deadline && Clock::now() > *deadline) {
      expired.store(true, std::memory_order_relaxed);
      return true;
    }
    return false;
  }
};

struct ShardResult {
  std::uint64_t nodes = 0;
  std::uint64_t pruned = 0;
  std::vector<ElementSet> found;
};

/// Depth-first branch and bound below a fixed size bound. A child branch
/// i adds candidate c_i and forbids c_1 .. c_{i-1}, so no set is reached twice.
class BranchAndBound {
 public:
  BranchAndBound(const CoverInstance& inst, int bound, Budget& budget)
      : inst_(inst), tab_(inst.table()), bound_(bound), budget_(budget) {}

  /// Branching decision at a node, or empty candidates if it is pruned.
  /// Leaves (nothing uncovered) are handled by the caller.
  std::vector<std::size_t> branch(const Bitset& uncovered, const Bitset& allowed, int depth) {
    const int room = bound_ - depth;
    if (room <= 0) return {};

    std::size_t best_t = Bitset::npos;
    std::size_t best_deg = Bitset::npos;
    uncovered.for_each([&](std::size_t t) {
      const std::size_t deg = tab_.blockers(t).count_and(allowed);
      if (deg < best_deg) {
        best_deg = deg;
        best_t = t;
      }
    });
    if (best_deg == 0) return {};
    if (inst_.lower_bound(uncovered, allowed) > room) return {};

    std::vector<std::pair<std::size_t, std::size_t>> order;  // (-coverage, element)
    for_each_common(tab_.blockers(best_t), allowed, [&](std::size_t e) {
      const std::size_t c = tab_.covered_by(e).count_and(uncovered);
      order.emplace_back(tab_.num_targets() - c, e);
    });
    std::sort(order.begin(), order.end());
    std::vector<std::size_t> out;
    out.reserve(order.size());
    for (const auto& [neg, e] : order) out.push_back(e);
    return out;
  }

  void run(Bitset uncovered, Bitset allowed, std::vector<std::size_t> chosen, ShardResult& out) {
    out_ = &out;
    chosen_ = std::move(chosen);
    dfs(uncovered, allowed);
  }

 private:
  void dfs(const Bitset& uncovered, const Bitset& allowed) {
    ++out_->nodes;
    if ((out_->nodes & 1023) == 0 && budget_.check()) return;
    if (budget_.expired.load(std::memory_order_relaxed)) return;
    if (uncovered.none()) {
      ElementSet s = chosen_;
      std::sort(s.begin(), s.end());
      out_->found.push_back(std::move(s));
      return;
    }
    const auto candidates = branch(uncovered, allowed, static_cast<int>(chosen_.size()));
    if (candidates.empty()) {
      ++out_->pruned;
      return;
    }
    Bitset next_allowed = allowed;
    Bitset next_uncovered(uncovered.size());
    for (std::size_t e : candidates) {
      next_allowed.reset(e);
      next_uncovered = uncovered;
      next_uncovered.subtract(tab_.covered_by(e));
      chosen_.push_back(e);
      dfs(next_uncovered, next_allowed);
      chosen_.pop_back();
    }
  }

  const CoverInstance& inst_;
  const IncidenceTable& tab_;
  int bound_;
  Budget& budget_;
  ShardResult* out_ = nullptr;
  std::vector<std::size_t> chosen_;
};

/// Runs job(i) for i in [0, count) on up to `workers` threads.
template <typename Job>
void run_sharded(std::size_t count, unsigned workers, Job&& job) {
  const unsigned threads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) job(i);
    });
  }
  for (auto& t : pool) t.join();
}

void merge(std::vector<ShardResult>& shards, SearchReport& report, std::vector<ElementSet>& found) {
  for (auto& s : shards) {
    report.nodes_expanded += s.nodes;
    report.pruned += s.pruned;
    for (auto& f : s.found) found.push_back(std::move(f));
  }
}

/// All sets found with bound b, or none. Counters accumulate into report.
std::vector<ElementSet> bnb_round(const CoverInstance& inst, int bound, unsigned workers,
                                  Budget& budget, SearchReport& report) {
  const IncidenceTable& tab = inst.table();
  const Bitset uncovered = inst.all_targets();
  const Bitset allowed = inst.all_elements();

  BranchAndBound root(inst, bound, budget);
  ++report.nodes_expanded;
  const auto candidates = root.branch(uncovered, allowed, 0);
  if (candidates.empty()) {
    ++report.pruned;
    return {};
  }

  std::vector<ShardResult> shards(candidates.size());
  run_sharded(candidates.size(), workers, [&](std::size_t i) {
    Bitset a = allowed;
    for (std::size_t j = 0; j <= i; ++j) a.reset(candidates[j]);
    Bitset u = uncovered;
    u.subtract(tab.covered_by(candidates[i]));
    BranchAndBound worker(inst, bound, budget);
    worker.run(std::move(u), std::move(a), {candidates[i]}, shards[i]);
  });
  std::vector<ElementSet> found;
  merge(shards, report, found);
  return found;
}

/// Every `size`-subset of the elements, checked directly.
class SubsetWalker {
 public:
  SubsetWalker(const IncidenceTable& tab, std::size_t size, Budget& budget)
      : tab_(tab), size_(size), budget_(budget) {}

  void run(std::size_t first, ShardResult& out) {
    out_ = &out;
    chosen_ = {first};
    Bitset covered = tab_.covered_by(first);
    walk(covered, first + 1);
  }

 private:
  void walk(const Bitset& covered, std::size_t start) {
    ++out_->nodes;
    if ((out_->nodes & 4095) == 0 && budget_.check()) return;
    if (budget_.expired.load(std::memory_order_relaxed)) return;
    if (chosen_.size() == size_) {
      if (covered.count() == tab_.num_targets()) out_->found.push_back(chosen_);
      return;
    }
    const std::size_t need = size_ - chosen_.size();
    Bitset next(covered.size());
    for (std::size_t e = start; e + need <= tab_.num_elements(); ++e) {
      next = covered;
      next |= tab_.covered_by(e);
      chosen_.push_back(e);
      walk(next, e + 1);
      chosen_.pop_back();
    }
  }

  const IncidenceTable& tab_;
  std::size_t size_;
  Budget& budget_;
  ShardResult* out_ = nullptr;
  ElementSet chosen_;
};

std::vector<ElementSet> exhaustive_round(const CoverInstance& inst, int size, unsigned workers,
                                         Budget& budget, SearchReport& report) {
  const IncidenceTable& tab = inst.table();
  ++report.nodes_expanded;
  if (size == 0) {
    if (tab.num_targets() == 0) return {ElementSet{}};
    return {};
  }
  const std::size_t ne = tab.num_elements();
  const std::size_t firsts = ne >= static_cast<std::size_t>(size) ? ne - size + 1 : 0;
  std::vector<ShardResult> shards(firsts);
  run_sharded(firsts, workers, [&](std::size_t i) {
    SubsetWalker walker(tab, static_cast<std::size_t>(size), budget);
    walker.run(i, shards[i]);
  });
  std::vector<ElementSet> found;
  merge(shards, report, found);
  return found;
}

}  // namespace

SearchReport min_blocking_search(std::shared_ptr<const GeometryContext> ctx, int k,
                                 const SearchOptions& options) {
  const auto start = Clock::now();
  if (k < 0 || k >= ctx->n()) throw Error(ErrorCode::InvalidInput, "need 0 <= k < n");
  if (options.size_cap < 0) throw Error(ErrorCode::InvalidInput, "size cap must be >= 0");
  if (options.budget_seconds && !(*options.budget_seconds > 0)) {
    throw Error(ErrorCode::InvalidInput, "budget must be positive");
  }

  Budget budget;
  if (options.budget_seconds) {
    budget.deadline = start + std::chrono::duration_cast<Clock::duration>(
                                  std::chrono::duration<double>(*options.budget_seconds));
  }

  SearchReport report;
  report.n = ctx->n();
  report.q = ctx->q();
  report.k = k;
  report.size_cap = options.size_cap;
  report.mode = options.mode;

  const CoverInstance inst(*ctx, k);
  report.root_lower_bound = inst.lower_bound(inst.all_targets(), inst.all_elements());

  const int first = options.mode == SearchMode::BranchAndBound ? report.root_lower_bound : 0;
  for (int size = first; size <= options.size_cap; ++size) {
    auto found = options.mode == SearchMode::BranchAndBound
                     ? bnb_round(inst, size, options.workers, budget, report)
                     : exhaustive_round(inst, size, options.workers, budget, report);
    if (budget.expired.load()) {
      report.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
      throw SearchBudgetExceeded(std::move(report));
    }
    if (!found.empty()) {
      std::sort(found.begin(), found.end());
      report.minimum_size = size;
      report.minimum_sets = std::move(found);
      break;
    }
  }
  report.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

std::string blocking_family(const BlockingSet& b) {
  if (is_hyperplane_pencil(b)) return "hyperplane_pencil";
  if (is_subspace_points(b)) return "subspace_points";
  if (recognize_construction1(b)) return "construction1";
  return "other";
}

ClassificationVerdict classify_minimum(std::shared_ptr<const GeometryContext> ctx, int k,
                                       const SearchOptions& options) {
  const int n = ctx->n();
  const int q = ctx->q();
  const MainTheoremBound bound = main_theorem_bound(n, k, q);

  ClassificationVerdict v;
  v.theorem_case = bound.which;
  v.expected_bound = bound.value;
  BigInt cap;
  switch (bound.which) {
    case MainTheoremBound::Case::HyperplanePencil:
      v.expected_family = "hyperplane_pencil";
      cap = *bound.value;
      break;
    case MainTheoremBound::Case::SubspacePoints:
      v.expected_family = "subspace_points";
      cap = *bound.value;
      break;
    case MainTheoremBound::Case::Middle:
      v.expected_family = "construction1";
      cap = *bound.value;
      break;
    case MainTheoremBound::Case::Open:
      // Compared against the trivial sets, as if the non-middle statement extended.
      v.expected_family = "trivial";
      cap = std::min(theta(k + 1, q), theta(n - k, q));
      break;
  }
  if (!cap.fits_sint_p()) throw Error(ErrorCode::InvalidInput, "bound too large to search");

  SearchOptions opts = options;
  opts.size_cap = static_cast<int>(cap.get_si());
  v.report = min_blocking_search(ctx, k, opts);
  v.observed_minimum = v.report.minimum_size;

  bool all_in_family = true;
  for (const auto& s : v.report.minimum_sets) {
    const auto b = BlockingSet::from_elements(ctx, k, s);
    const std::string family = blocking_family(b);
    ++v.family_counts[family];
    const bool ok = v.expected_family == "trivial"
                        ? family == "hyperplane_pencil" || family == "subspace_points"
                        : family == v.expected_family;
    if (!ok) {
      all_in_family = false;
      v.mismatches.push_back(s);
    }
  }
  v.all_minima_match_theorem = v.observed_minimum && BigInt(*v.observed_minimum) == cap &&
                               all_in_family;
  return v;
}

}  // namespace pgblock
