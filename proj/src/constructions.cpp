#include "pgblock/constructions.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace pgblock {

namespace {

std::vector<std::size_t> set_difference(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::size_t> merge_unique(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Intersection of the given hyperplanes (by dual index): the dual of the span
// of their dual points.
Subspace meet_of_hyperplanes(const GeometryContext& ctx, const std::vector<std::size_t>& hyperplanes) {
  return dual(ctx, span_of_points(ctx, hyperplanes));
}

}  // namespace

Subspace coordinate_subspace(const GeometryContext& ctx, int count) {
  std::vector<Row> rows;
  for (int i = 0; i < count; ++i) {
    Row r(static_cast<std::size_t>(ctx.width()), 0);
    r[static_cast<std::size_t>(i)] = 1;
    rows.push_back(std::move(r));
  }
  return Subspace::from_rref(ctx.n(), std::move(rows));
}

std::vector<Subspace> pencil(const GeometryContext& ctx, const Subspace& axis, const Subspace& carrier) {
  if (carrier.dim() != axis.dim() + 2 || !contains(ctx, carrier, axis)) {
    throw Error(ErrorCode::BadPencil, "axis must be a codimension-2 subspace of the carrier");
  }
  std::vector<Subspace> out;
  for (auto& s : subspaces_within(ctx, carrier, axis.dim() + 1)) {
    if (contains(ctx, s, axis)) out.push_back(std::move(s));
  }
  return out;
}

BlockingSet construction1(std::shared_ptr<const GeometryContext> ctx_ptr, const Construction1Params& params) {
  const GeometryContext& ctx = *ctx_ptr;
  const int k = params.axis.dim() + 1;
  if (params.carrier.ambient() != ctx.n() || params.axis.ambient() != ctx.n()) {
    throw Error(ErrorCode::DimensionMismatch, "parameters live in a different space");
  }
  if (ctx.n() != 2 * k + 1) throw Error(ErrorCode::WrongAmbient, "needs n = 2k + 1");
  if (params.point_spaces.empty() || params.hyperplane_spaces.empty()) {
    throw Error(ErrorCode::EmptyPart, "both parts of the pencil must be nonempty");
  }
  const auto full = pencil(ctx, params.axis, params.carrier);
  std::vector<Subspace> given(params.point_spaces);
  given.insert(given.end(), params.hyperplane_spaces.begin(), params.hyperplane_spaces.end());
  std::sort(given.begin(), given.end());
  std::vector<Subspace> expected(full);
  std::sort(expected.begin(), expected.end());
  if (given != expected) {
    throw Error(ErrorCode::BadPencil, "the two parts must partition the pencil");
  }

  const auto axis_points = point_indices(ctx, params.axis);
  std::vector<std::size_t> points;
  for (const auto& kappa : params.point_spaces) {
    const auto off_axis = set_difference(point_indices(ctx, kappa), axis_points);
    points.insert(points.end(), off_axis.begin(), off_axis.end());
  }
  const auto over_carrier = point_indices(ctx, dual(ctx, params.carrier));
  std::vector<std::size_t> hyperplanes;
  for (const auto& kappa : params.hyperplane_spaces) {
    const auto through = set_difference(point_indices(ctx, dual(ctx, kappa)), over_carrier);
    hyperplanes.insert(hyperplanes.end(), through.begin(), through.end());
  }
  return BlockingSet(std::move(ctx_ptr), k, merge_unique(std::move(points)), merge_unique(std::move(hyperplanes)));
}

std::optional<Construction1Params> recognize_construction1(const BlockingSet& b) {
  const GeometryContext& ctx = b.ctx();
  const int k = b.k();
  const int q = ctx.q();
  if (ctx.n() != 2 * k + 1) return std::nullopt;
  if (b.points().empty() || b.hyperplanes().empty()) return std::nullopt;
  BigInt expected_size = q + 1;
  for (int i = 0; i < k; ++i) expected_size *= q;
  if (BigInt(static_cast<unsigned long>(b.size())) != expected_size) return std::nullopt;

  // span(B0) is the carrier (|K1| >= 2) or the single point space; the meet
  // of B_{n-1} is the axis (|K2| >= 2) or the single hyperplane space.
  const Subspace point_span = span_of_points(ctx, b.points());
  const Subspace hyper_meet = meet_of_hyperplanes(ctx, b.hyperplanes());
  if (point_span.dim() < k || point_span.dim() > k + 1) return std::nullopt;
  if (hyper_meet.dim() < k - 1 || hyper_meet.dim() > k) return std::nullopt;

  std::vector<Subspace> carriers;
  const Subspace joined = span(ctx, point_span, hyper_meet);
  if (joined.dim() == k + 1) {
    carriers.push_back(joined);
  } else if (joined.dim() == k) {
    carriers = subspaces_through(ctx, joined, k + 1);
  } else {
    return std::nullopt;
  }

  for (const auto& carrier : carriers) {
    std::vector<Subspace> axes;
    if (hyper_meet.dim() == k - 1) {
      axes.push_back(hyper_meet);
    } else {
      axes = subspaces_within(ctx, hyper_meet, k - 1);
    }
    for (const auto& axis : axes) {
      if (!contains(ctx, carrier, axis)) continue;
      Construction1Params params{carrier, axis, {}, {}};
      for (auto& kappa : pencil(ctx, axis, carrier)) {
        const auto pts = point_indices(ctx, kappa);
        const bool has_point = std::any_of(b.points().begin(), b.points().end(), [&](std::size_t p) {
          return std::binary_search(pts.begin(), pts.end(), p);
        });
        (has_point ? params.point_spaces : params.hyperplane_spaces).push_back(std::move(kappa));
      }
      if (params.point_spaces.empty() || params.hyperplane_spaces.empty()) continue;
      if (construction1(b.shared_ctx(), params) == b) return params;
    }
  }
  return std::nullopt;
}

Construction1Params canonical_construction1_params(const GeometryContext& ctx, int k, int t) {
  if (ctx.n() != 2 * k + 1) throw Error(ErrorCode::WrongAmbient, "needs n = 2k + 1");
  if (t < 1 || t > ctx.q()) {
    throw Error(ErrorCode::EmptyPart, "t = |K1| must lie in [1, q]");
  }
  Construction1Params params{coordinate_subspace(ctx, k + 2), coordinate_subspace(ctx, k), {}, {}};
  auto members = pencil(ctx, params.axis, params.carrier);
  for (std::size_t i = 0; i < members.size(); ++i) {
    (static_cast<int>(i) < t ? params.point_spaces : params.hyperplane_spaces).push_back(std::move(members[i]));
  }
  return params;
}

Construction1Params random_construction1_params(const GeometryContext& ctx, int k, std::mt19937_64& rng) {
  if (ctx.n() != 2 * k + 1) throw Error(ErrorCode::WrongAmbient, "needs n = 2k + 1");
  const Subspace carrier = random_subspace(ctx, k + 1, rng);
  const auto& f = ctx.field();
  std::uniform_int_distribution<Element> coef(0, static_cast<Element>(ctx.q() - 1));
  Subspace axis = Subspace::empty(ctx.n());
  while (axis.dim() != k - 1) {
    std::vector<Row> rows;
    for (int i = 0; i < k; ++i) {
      Row v(static_cast<std::size_t>(ctx.width()), 0);
      for (const auto& r : carrier.basis()) {
        const Element c = coef(rng);
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = f.add(v[j], f.mul(c, r[j]));
      }
      rows.push_back(std::move(v));
    }
    axis = rows.empty() ? Subspace::empty(ctx.n()) : Subspace::from_rows(ctx, std::move(rows));
  }
  auto members = pencil(ctx, axis, carrier);
  std::shuffle(members.begin(), members.end(), rng);
  const int t = std::uniform_int_distribution<int>(1, ctx.q())(rng);
  Construction1Params params{carrier, axis, {}, {}};
  for (std::size_t i = 0; i < members.size(); ++i) {
    (static_cast<int>(i) < t ? params.point_spaces : params.hyperplane_spaces).push_back(std::move(members[i]));
  }
  std::sort(params.point_spaces.begin(), params.point_spaces.end());
  std::sort(params.hyperplane_spaces.begin(), params.hyperplane_spaces.end());
  return params;
}

void for_each_construction1_params(const GeometryContext& ctx, int k,
                                   const std::function<void(const Construction1Params&)>& visit) {
  if (ctx.n() != 2 * k + 1) throw Error(ErrorCode::WrongAmbient, "needs n = 2k + 1");
  for (const auto& carrier : enumerate_subspaces(ctx, k + 1)) {
    for (const auto& axis : subspaces_within(ctx, carrier, k - 1)) {
      const auto members = pencil(ctx, axis, carrier);
      const std::uint64_t splits = std::uint64_t{1} << members.size();
      for (std::uint64_t mask = 1; mask + 1 < splits; ++mask) {
        Construction1Params params{carrier, axis, {}, {}};
        for (std::size_t i = 0; i < members.size(); ++i) {
          ((mask >> i) & 1 ? params.point_spaces : params.hyperplane_spaces).push_back(members[i]);
        }
        visit(params);
      }
    }
  }
}

std::vector<BlockingSet> distinct_construction1_sets(std::shared_ptr<const GeometryContext> ctx, int k) {
  std::set<std::vector<std::size_t>> seen;
  for_each_construction1_params(*ctx, k, [&](const Construction1Params& params) {
    seen.insert(construction1(ctx, params).elements());
  });
  std::vector<BlockingSet> out;
  out.reserve(seen.size());
  for (const auto& elements : seen) out.push_back(BlockingSet::from_elements(ctx, k, elements));
  return out;
}

BlockingSet bose_burton(std::shared_ptr<const GeometryContext> ctx, int k, BoseBurtonVariant variant,
                        const Subspace& anchor) {
  const int n = ctx->n();
  if (anchor.ambient() != n) throw Error(ErrorCode::DimensionMismatch, "anchor lives in a different space");
  if (variant == BoseBurtonVariant::Points) {
    if (anchor.dim() != n - k) throw Error(ErrorCode::WrongAnchorDim, "points variant needs an (n-k)-space");
    auto pts = point_indices(*ctx, anchor);
    return BlockingSet(std::move(ctx), k, std::move(pts), {});
  }
  if (anchor.dim() != n - k - 2) {
    throw Error(ErrorCode::WrongAnchorDim, "hyperplanes variant needs an (n-k-2)-space");
  }
  auto hyps = point_indices(*ctx, dual(*ctx, anchor));
  return BlockingSet(std::move(ctx), k, {}, std::move(hyps));
}

BlockingSet remark_q2_construction(std::shared_ptr<const GeometryContext> ctx_ptr) {
  const GeometryContext& ctx = *ctx_ptr;
  if (ctx.q() != 2 || ctx.n() % 2 != 0) {
    throw Error(ErrorCode::WrongParameters, "needs q = 2 and n even");
  }
  const int k = ctx.n() / 2;
  const Subspace big = coordinate_subspace(ctx, k + 1);  // dimension n/2
  const Subspace kappa = coordinate_subspace(ctx, k);    // dimension n/2 - 1
  auto points = set_difference(point_indices(ctx, big), point_indices(ctx, kappa));
  auto hyperplanes = set_difference(point_indices(ctx, dual(ctx, kappa)), point_indices(ctx, dual(ctx, big)));
  return BlockingSet(std::move(ctx_ptr), k, std::move(points), std::move(hyperplanes));
}

bool is_hyperplane_pencil(const BlockingSet& b) {
  const GeometryContext& ctx = b.ctx();
  if (!b.points().empty() || b.hyperplanes().empty()) return false;
  const Subspace center = meet_of_hyperplanes(ctx, b.hyperplanes());
  if (center.dim() != ctx.n() - b.k() - 2) return false;
  return point_indices(ctx, dual(ctx, center)) == b.hyperplanes();
}

bool is_subspace_points(const BlockingSet& b) {
  const GeometryContext& ctx = b.ctx();
  if (!b.hyperplanes().empty() || b.points().empty()) return false;
  const Subspace s = span_of_points(ctx, b.points());
  if (s.dim() != ctx.n() - b.k()) return false;
  return point_indices(ctx, s) == b.points();
}

}  // namespace pgblock
