#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "pgblock/counting.hpp"
#include "pgblock/geometry.hpp"

namespace pgblock {

enum class ElementKind { Point, Hyperplane };

/// A member of a blocking set. Hyperplanes are referred to by the canonical
/// index of their dual coordinate vector.
struct ElementRef {
  ElementKind kind;
  std::size_t index;

  friend bool operator==(const ElementRef&, const ElementRef&) = default;
};

/// B = B0 u B_{n-1}: a set of points and hyperplanes of PG(n, q), meant to
/// block the k-spaces. Both parts are kept sorted and duplicate-free.
class BlockingSet {
 public:
  BlockingSet(std::shared_ptr<const GeometryContext> ctx, int k,
              std::vector<std::size_t> points, std::vector<std::size_t> hyperplanes);

  /// From element ids of the incidence numbering (points, then hyperplanes).
  static BlockingSet from_elements(std::shared_ptr<const GeometryContext> ctx, int k,
                                   std::span<const std::size_t> elements);

  const GeometryContext& ctx() const noexcept { return *ctx_; }
  const std::shared_ptr<const GeometryContext>& shared_ctx() const noexcept { return ctx_; }
  int k() const noexcept { return k_; }
  const std::vector<std::size_t>& points() const noexcept { return points_; }
  const std::vector<std::size_t>& hyperplanes() const noexcept { return hyperplanes_; }
  std::size_t size() const noexcept { return points_.size() + hyperplanes_.size(); }

  /// Element ids, sorted: points first, then theta_n + hyperplane index.
  std::vector<std::size_t> elements() const;
  Subspace hyperplane(std::size_t i) const;

  friend bool operator==(const BlockingSet& a, const BlockingSet& b) {
    return a.ctx_->same_space(*b.ctx_) && a.k_ == b.k_ && a.points_ == b.points_ &&
           a.hyperplanes_ == b.hyperplanes_;
  }

 private:
  std::shared_ptr<const GeometryContext> ctx_;
  int k_;
  std::vector<std::size_t> points_;
  std::vector<std::size_t> hyperplanes_;
};

struct BlockingCheck {
  bool blocking;
  std::optional<Subspace> witness;  // an unblocked k-space when not blocking
};

BlockingCheck is_blocking(const BlockingSet& b);

/// s-spaces containing no point of B0 and lying in no hyperplane of B_{n-1}.
std::uint64_t unblocked_count(const BlockingSet& b, int s);

struct MinimalityCheck {
  bool minimal;
  std::optional<ElementRef> removable;
};

/// Throws NotBlocking if b does not block.
MinimalityCheck is_minimal(const BlockingSet& b);

/// Points <-> hyperplanes under the standard duality; k -> n - 1 - k.
BlockingSet dual_set(const BlockingSet& b);

enum class LineType { Skew, Tangent, Secant };

LineType line_type(const GeometryContext& ctx, const Subspace& line,
                   std::span<const std::size_t> point_set);

const char* to_string(LineType t);

struct TangentClosure {
  std::vector<std::size_t> closure;            // S plus the points on no tangent
  std::optional<std::size_t> violating_point;  // lies on a tangent and a secant
  bool hypothesis_holds;
  bool is_subspace;
  int dim;           // dimension of span(closure)
  int expected_dim;  // min { m : |S| <= theta_m }
  /// When the hypothesis holds: closure is a subspace of dimension expected_dim.
  bool law_holds() const { return !hypothesis_holds || (is_subspace && dim == expected_dim); }
};

/// Adds to S every point outside S that lies on no tangent line of S and
/// checks whether the result is a subspace of the predicted dimension.
TangentClosure tangent_closure(const GeometryContext& ctx, std::span<const std::size_t> s);

/// Some point outside S lying on both a tangent and a secant, if any.
std::optional<std::size_t> tangent_secant_point(const GeometryContext& ctx,
                                                std::span<const std::size_t> s);

/// A point of B0 lying on a hyperplane of B_{n-1}, if any.
std::optional<std::pair<std::size_t, std::size_t>> point_on_hyperplane(const BlockingSet& b);

struct SkewSpaceProfile {
  std::size_t hyperplanes_through_rho;
  /// The bound q + 1 - |B0| / q^k as the exact fraction numerator / q^k.
  BigInt bound_numerator;
  BigInt bound_denominator;
  bool bound_holds;
  bool equality;
  /// Checked only on equality: every k-space through rho meets B0 in at most
  /// one point, and q^k divides |B0|.
  std::optional<bool> at_most_one_point_per_k_space;
  std::optional<bool> b0_multiple_of_qk;

  bool consistent() const {
    return bound_holds && (!equality || (*at_most_one_point_per_k_space && *b0_multiple_of_qk));
  }
};

/// For a (k-1)-space rho skew to B0 in PG(2k+1, q).
SkewSpaceProfile skew_space_profile(const BlockingSet& b, const Subspace& rho);

struct HyperplanesThroughPoint {
  enum class Case { FullPencil, Count };
  std::vector<std::size_t> members;  // B_P, as dual-coordinate indices
  Case which;
  std::optional<Subspace> rho;  // for FullPencil: the k-space of Sigma
  BigInt claimed_bound;         // q^k for FullPencil, q^(k-1)(q+1) otherwise
  bool lemma_applies;           // B blocks k-spaces
  bool bound_holds;             // vacuously true when the lemma does not apply
};

/// B_P = hyperplanes of B through P not containing Sigma, for a (k+1)-space
/// Sigma containing B0 and P in Sigma \ B0, in PG(2k+1, q).
HyperplanesThroughPoint bp_hyperplanes(const BlockingSet& b, const Subspace& sigma, const Point& p);

}  // namespace pgblock
