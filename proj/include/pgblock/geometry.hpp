#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <unordered_map>
#include <vector>

#include "pgblock/bitset.hpp"
#include "pgblock/gf.hpp"

namespace pgblock {

/// A coordinate row of length n+1.
using Row = std::vector<Element>;

/// Enumerations larger than this many subspaces are refused.
inline constexpr std::uint64_t kEnumerationBudget = 100'000'000;

class IncidenceTable;

/// The ambient space PG(n, q). Owns no geometry beyond the field and a few
/// derived counts; incidence tables are built lazily per target dimension
/// and cached, so share one context per ambient space.
class GeometryContext {
 public:
  GeometryContext(FieldSpec field, int n);
  GeometryContext(const GeometryContext&) = delete;
  GeometryContext& operator=(const GeometryContext&) = delete;
  ~GeometryContext();

  static std::shared_ptr<const GeometryContext> make(FieldSpec field, int n);
  static std::shared_ptr<const GeometryContext> make(int q, int n);

  const FieldSpec& field() const noexcept { return field_; }
  int n() const noexcept { return n_; }
  int q() const noexcept { return field_.q(); }
  int width() const noexcept { return n_ + 1; }

  /// theta_n, the number of points.
  std::size_t num_points() const noexcept { return num_points_; }

  /// Canonical ordinal of a normalized coordinate vector under the
  /// lexicographic order of normalized tuples.
  std::size_t point_index(std::span<const Element> normalized) const;
  Row point_coords(std::size_t index) const;

  /// The blocker/target incidence structure for k-spaces; built on first use.
  const IncidenceTable& incidence(int k) const;

  bool same_space(const GeometryContext& other) const {
    return n_ == other.n_ && field_ == other.field_;
  }

 private:
  FieldSpec field_;
  int n_;
  std::size_t num_points_;
  std::vector<std::size_t> theta_;  // theta_[m + 1] = theta_m for m in [-1, n]
  mutable std::mutex cache_mutex_;
  mutable std::map<int, std::unique_ptr<IncidenceTable>> incidence_cache_;
};

/// A projective point: coordinates normalized so the leftmost nonzero entry
/// is 1, plus its canonical index.
struct Point {
  Row coords;
  std::size_t index = 0;

  friend bool operator==(const Point& a, const Point& b) { return a.index == b.index; }
  friend auto operator<=>(const Point& a, const Point& b) { return a.index <=> b.index; }
};

/// Scales `coords` so its leftmost nonzero entry is 1. Returns whether
/// anything changed. Throws InvalidInput on the zero vector.
bool normalize(const FieldSpec& field, Row& coords);

/// Normalizes and indexes arbitrary nonzero coordinates.
Point make_point(const GeometryContext& ctx, Row coords);
Point point_at(const GeometryContext& ctx, std::size_t index);

/// A subspace of PG(n, q) stored as its reduced row-echelon basis, which is
/// the unique canonical representative: equal subspaces have equal bases.
/// dim() == -1 encodes the empty subspace.
class Subspace {
 public:
  Subspace() = default;

  static Subspace empty(int n);
  static Subspace whole(const GeometryContext& ctx);
  /// Row-reduces arbitrary spanning rows.
  static Subspace from_rows(const GeometryContext& ctx, std::vector<Row> rows);
  static Subspace of_point(const Point& p);
  /// The hyperplane { x : sum a_i x_i = 0 }.
  static Subspace hyperplane(const GeometryContext& ctx, Row dual_coords);
  /// Wraps rows already in reduced echelon form.
  static Subspace from_rref(int n, std::vector<Row> rows);

  int ambient() const noexcept { return n_; }
  int dim() const noexcept { return static_cast<int>(rows_.size()) - 1; }
  bool is_empty() const noexcept { return rows_.empty(); }
  const std::vector<Row>& basis() const noexcept { return rows_; }
  std::vector<int> pivots() const;

  friend bool operator==(const Subspace&, const Subspace&) = default;
  friend auto operator<=>(const Subspace&, const Subspace&) = default;

 private:
  int n_ = 0;
  std::vector<Row> rows_;
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const noexcept;
};

/// Reduced row-echelon form with zero rows dropped.
std::vector<Row> rref(const FieldSpec& field, std::vector<Row> rows);

Subspace span(const GeometryContext& ctx, std::span<const Subspace> parts);
Subspace span(const GeometryContext& ctx, const Subspace& a, const Subspace& b);
Subspace span(const GeometryContext& ctx, const Subspace& a, const Point& p);
Subspace span_of_points(const GeometryContext& ctx, std::span<const std::size_t> point_indices);

/// Intersection; satisfies dim span + dim meet = dim a + dim b.
Subspace meet(const GeometryContext& ctx, const Subspace& a, const Subspace& b);

bool contains(const GeometryContext& ctx, const Subspace& outer, const Subspace& inner);
bool contains(const GeometryContext& ctx, const Subspace& outer, const Point& p);
bool contains(const GeometryContext& ctx, const Subspace& outer, std::span<const Element> vector);

/// Orthogonal complement under the standard dot product. An inclusion
/// reversing involution with dim a + dim dual(a) = n - 1.
Subspace dual(const GeometryContext& ctx, const Subspace& a);

/// Dual coordinates of a hyperplane, i.e. the point dual to it.
Point hyperplane_coords(const GeometryContext& ctx, const Subspace& hyperplane);

/// Sorted canonical indices of the points of `s`.
std::vector<std::size_t> point_indices(const GeometryContext& ctx, const Subspace& s);

/// Every point, in canonical index order.
std::vector<Point> all_points(const GeometryContext& ctx);

/// Walks the m-spaces of PG(n, q) by pivot pattern and free entries, so each
/// subspace comes out exactly once and already canonical.
class SubspaceEnumerator {
 public:
  SubspaceEnumerator(const FieldSpec& field, int n, int m);

  std::optional<Subspace> next();

 private:
  void load_pattern();
  bool advance_pattern();

  const FieldSpec* field_;
  int n_;
  int m_;
  bool done_ = false;
  std::vector<int> pivots_;
  std::vector<std::pair<int, int>> free_slots_;  // (row, column)
  std::vector<Element> free_values_;
};

/// Number of m-spaces of PG(n, q), saturated at UINT64_MAX.
std::uint64_t subspace_count(int n, int m, int q);

/// All m-spaces in enumeration order. Throws BudgetExceeded above
/// kEnumerationBudget.
std::vector<Subspace> enumerate_subspaces(const GeometryContext& ctx, int m);

/// m-spaces contained in `s`.
std::vector<Subspace> subspaces_within(const GeometryContext& ctx, const Subspace& s, int m);
/// m-spaces containing `s`.
std::vector<Subspace> subspaces_through(const GeometryContext& ctx, const Subspace& s, int m);

/// Images of `points` under projection from `center` onto the complementary
/// `screen`, deduplicated and sorted by index.
std::vector<Point> project_from(const GeometryContext& ctx, const Subspace& center,
                                const Subspace& screen, std::span<const Point> points);

/// Uniformly random m-space (rejection sampling on spanning rows).
Subspace random_subspace(const GeometryContext& ctx, int m, std::mt19937_64& rng);

/// Blockers are numbered points first (0 .. theta_n - 1), then hyperplanes
/// by the index of their dual coordinates (theta_n .. 2 theta_n - 1).
class IncidenceTable {
 public:
  IncidenceTable(const GeometryContext& ctx, int k);

  int k() const noexcept { return k_; }
  std::size_t num_points() const noexcept { return num_points_; }
  std::size_t num_elements() const noexcept { return 2 * num_points_; }
  std::size_t num_targets() const noexcept { return targets_.size(); }

  const std::vector<Subspace>& targets() const noexcept { return targets_; }
  const Subspace& target(std::size_t t) const { return targets_.at(t); }
  std::optional<std::size_t> target_index(const Subspace& s) const;

  /// Elements incident with target t: its points and the hyperplanes over it.
  const Bitset& blockers(std::size_t t) const { return blockers_.at(t); }
  /// Targets incident with element e.
  const Bitset& covered_by(std::size_t e) const { return covers_.at(e); }

  std::size_t point_element(std::size_t point) const noexcept { return point; }
  std::size_t hyperplane_element(std::size_t dual_point) const noexcept {
    return num_points_ + dual_point;
  }

 private:
  int k_;
  std::size_t num_points_;
  std::vector<Subspace> targets_;
  std::unordered_map<Subspace, std::size_t, SubspaceHash> index_;
  std::vector<Bitset> blockers_;
  std::vector<Bitset> covers_;
};

}  // namespace pgblock
