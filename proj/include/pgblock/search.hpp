#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pgblock/blocking.hpp"
#include "pgblock/error.hpp"

namespace pgblock {

enum class SearchMode { Exhaustive, BranchAndBound };

const char* to_string(SearchMode mode);
std::optional<SearchMode> parse_search_mode(std::string_view text);

struct SearchOptions {
  int size_cap = 0;
  SearchMode mode = SearchMode::BranchAndBound;
  unsigned workers = 1;
  std::optional<double> budget_seconds;
};

/// Sorted element ids (points, then theta_n + hyperplane index).
using ElementSet = std::vector<std::size_t>;

struct SearchReport {
  int n = 0;
  int q = 0;
  int k = 0;
  int size_cap = 0;
  SearchMode mode = SearchMode::BranchAndBound;
  std::optional<int> minimum_size;  // empty: nothing of size <= size_cap blocks
  std::vector<ElementSet> minimum_sets;  // lexicographically sorted
  std::uint64_t nodes_expanded = 0;
  std::uint64_t pruned = 0;
  int root_lower_bound = 0;
  double wall_time = 0.0;  // seconds
};

/// Thrown when the time budget runs out. Carries the counters reached so
/// far; minimum_size and minimum_sets are left empty.
class SearchBudgetExceeded : public Error {
 public:
  explicit SearchBudgetExceeded(SearchReport partial)
      : Error(ErrorCode::BudgetExceeded, "search time budget exhausted"),
        partial_(std::move(partial)) {}

  const SearchReport& partial() const noexcept { return partial_; }

 private:
  SearchReport partial_;
};

/// The covering problem behind the search: pick elements so every target
/// k-space has a blocker. Holds a reference to the context's incidence table.
class CoverInstance {
 public:
  CoverInstance(const GeometryContext& ctx, int k);

  const IncidenceTable& table() const noexcept { return *table_; }
  std::size_t num_elements() const noexcept { return table_->num_elements(); }
  std::size_t num_targets() const noexcept { return table_->num_targets(); }

  Bitset all_targets() const;
  Bitset all_elements() const;

  /// A lower bound on how many elements of `allowed` are still needed to
  /// cover `uncovered`; kInfeasible if some target has no allowed blocker.
  int lower_bound(const Bitset& uncovered, const Bitset& allowed) const;

  static constexpr int kInfeasible = 1 << 20;

 private:
  const IncidenceTable* table_;
};

SearchReport min_blocking_search(std::shared_ptr<const GeometryContext> ctx, int k,
                                 const SearchOptions& options);

struct ClassificationVerdict {
  std::optional<BigInt> expected_bound;  // empty: the theorem leaves this case open
  MainTheoremBound::Case theorem_case;
  std::string expected_family;
  std::optional<int> observed_minimum;
  bool all_minima_match_theorem = false;
  std::vector<ElementSet> mismatches;  // minima outside the predicted family
  std::map<std::string, std::size_t> family_counts;
  SearchReport report;
};

/// Family label of a blocking set: "hyperplane_pencil", "subspace_points",
/// "construction1" or "other".
std::string blocking_family(const BlockingSet& b);

/// Searches up to the theorem's bound (or min(theta_{k+1}, theta_{n-k}) in
/// the open cases) and checks every minimum against the predicted family.
/// options.size_cap is ignored. Propagates SearchBudgetExceeded.
ClassificationVerdict classify_minimum(std::shared_ptr<const GeometryContext> ctx, int k,
                                       const SearchOptions& options);

}  // namespace pgblock
