#pragma once

#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "pgblock/blocking.hpp"

namespace pgblock {

/// Parameters of the mixed point/hyperplane construction in PG(2k+1, q):
/// a (k+1)-space `carrier`, a (k-1)-space `axis` inside it, and the pencil
/// of q+1 k-spaces between them split into two nonempty parts. Points come
/// from `point_spaces`, hyperplanes from `hyperplane_spaces`.
struct Construction1Params {
  Subspace carrier;
  Subspace axis;
  std::vector<Subspace> point_spaces;
  std::vector<Subspace> hyperplane_spaces;
};

/// The q+1 k-spaces containing `axis` (dim k-1) inside `carrier` (dim k+1).
std::vector<Subspace> pencil(const GeometryContext& ctx, const Subspace& axis, const Subspace& carrier);

/// B0 = points of point_spaces off the axis; B_{n-1} = hyperplanes through a
/// member of hyperplane_spaces not containing the carrier. Throws BadPencil,
/// EmptyPart, WrongAmbient or DimensionMismatch on invalid parameters.
BlockingSet construction1(std::shared_ptr<const GeometryContext> ctx, const Construction1Params& params);

/// Recovers parameters that regenerate exactly `b`, or nullopt.
std::optional<Construction1Params> recognize_construction1(const BlockingSet& b);

/// Standard-basis anchors: carrier = <e_0..e_{k+1}>, axis = <e_0..e_{k-1}>,
/// point_spaces = the first t pencil members in enumeration order.
Construction1Params canonical_construction1_params(const GeometryContext& ctx, int k, int t);

Construction1Params random_construction1_params(const GeometryContext& ctx, int k, std::mt19937_64& rng);

/// Calls `visit` for every parameter tuple (carrier, axis, split).
void for_each_construction1_params(const GeometryContext& ctx, int k,
                                   const std::function<void(const Construction1Params&)>& visit);

/// The distinct sets produced by all parameter tuples, sorted by element ids.
std::vector<BlockingSet> distinct_construction1_sets(std::shared_ptr<const GeometryContext> ctx, int k);

enum class BoseBurtonVariant { Points, Hyperplanes };

/// Points variant: all points of an (n-k)-space. Hyperplanes variant: all
/// hyperplanes through an (n-k-2)-space.
BlockingSet bose_burton(std::shared_ptr<const GeometryContext> ctx, int k, BoseBurtonVariant variant,
                        const Subspace& anchor);

/// The q = 2, even n set blocking n/2-spaces: points of an n/2-space minus
/// an (n/2-1)-space kappa, plus the hyperplanes through kappa not containing
/// the n/2-space. Size 2^(n/2+1).
BlockingSet remark_q2_construction(std::shared_ptr<const GeometryContext> ctx);

/// The subspace spanned by the first `count` standard basis vectors.
Subspace coordinate_subspace(const GeometryContext& ctx, int count);

/// Predicted families of smallest blocking sets.
bool is_hyperplane_pencil(const BlockingSet& b);  // all hyperplanes through an (n-k-2)-space
bool is_subspace_points(const BlockingSet& b);    // all points of an (n-k)-space

}  // namespace pgblock
