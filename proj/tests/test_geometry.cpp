#include <doctest.h>

#include "oracles.hpp"
#include "pgblock/constructions.hpp"
#include "pgblock/counting.hpp"
#include "pgblock/geometry.hpp"

using namespace pgblock;

namespace {

struct Space {
  int q;
  int n;
};

const Space kSmall[] = {{2, 2}, {3, 2}, {4, 2}, {2, 3}, {3, 3}, {2, 4}};

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidInput;
}

std::vector<Subspace> all_subspaces(const GeometryContext& ctx) {
  std::vector<Subspace> out;
  for (int m = -1; m <= ctx.n(); ++m) {
    auto level = enumerate_subspaces(ctx, m);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

Row unit(const GeometryContext& ctx, int i) {
  Row r(static_cast<std::size_t>(ctx.width()), 0);
  r[static_cast<std::size_t>(i)] = 1;
  return r;
}

}  // namespace

TEST_CASE("points and their canonical indices") {
  CHECK(all_points(*GeometryContext::make(2, 2)).size() == 7);
  CHECK(all_points(*GeometryContext::make(2, 3)).size() == 15);
  CHECK(all_points(*GeometryContext::make(3, 3)).size() == 40);

  for (auto [q, n] : kSmall) {
    CAPTURE(q);
    CAPTURE(n);
    const auto ctx = GeometryContext::make(q, n);
    const oracle::Space ref(ctx->field(), n);
    const auto pts = all_points(*ctx);
    REQUIRE(pts.size() == ref.num_points());
    REQUIRE(ctx->num_points() == ref.num_points());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      CHECK(pts[i].index == i);
      CHECK(pts[i].coords == ref.point(i));
      CHECK(ctx->point_index(ref.point(i)) == i);
      CHECK(ctx->point_coords(i) == ref.point(i));
    }
  }
}

TEST_CASE("normalization is idempotent and scale invariant") {
  const auto ctx = GeometryContext::make(5, 3);
  const auto& f = ctx->field();
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<Element> pick(0, 4);
  for (int i = 0; i < 500; ++i) {
    Row r(4);
    for (auto& x : r) x = pick(rng);
    if (std::all_of(r.begin(), r.end(), [](Element x) { return x == 0; })) continue;
    const Point p = make_point(*ctx, r);
    Row again = p.coords;
    CHECK_FALSE(normalize(f, again));
    for (Element c = 1; c < 5; ++c) {
      Row scaled = r;
      for (auto& x : scaled) x = f.mul(x, c);
      CHECK(make_point(*ctx, scaled) == p);
    }
  }
  Row zero(4, 0);
  CHECK(code_of([&] { normalize(f, zero); }) == ErrorCode::InvalidInput);
}

TEST_CASE("subspace enumeration matches the Gaussian count and the oracle") {
  for (auto [q, n] : kSmall) {
    CAPTURE(q);
    CAPTURE(n);
    const auto ctx = GeometryContext::make(q, n);
    const oracle::Space ref(ctx->field(), n);
    for (int m = 0; m <= n; ++m) {
      CAPTURE(m);
      const auto subs = enumerate_subspaces(*ctx, m);
      CHECK(BigInt(static_cast<unsigned long>(subs.size())) == gaussian(n + 1, m + 1, q));
      CHECK(subspace_count(n, m, q) == subs.size());
      std::set<oracle::PointSet> mine;
      for (const auto& s : subs) {
        CHECK(s.dim() == m);
        mine.insert(point_indices(*ctx, s));
      }
      CHECK(mine.size() == subs.size());
      if (q * n <= 9) {
        const auto theirs = ref.subspaces(m);
        CHECK(std::set<oracle::PointSet>(theirs.begin(), theirs.end()) == mine);
      }
    }
  }
  CHECK(enumerate_subspaces(*GeometryContext::make(2, 3), 1).size() == 35);
  CHECK(enumerate_subspaces(*GeometryContext::make(2, 3), 2).size() == 15);
  CHECK(enumerate_subspaces(*GeometryContext::make(2, 4), 2).size() == 155);
  CHECK(code_of([] { enumerate_subspaces(*GeometryContext::make(2, 30), 2); }) ==
        ErrorCode::BudgetExceeded);
}

TEST_CASE("canonical form: equal point sets iff equal matrices, PG(3,2)") {
  const auto ctx = GeometryContext::make(2, 3);
  const auto subs = all_subspaces(*ctx);
  std::map<std::vector<std::size_t>, Subspace> by_points;
  for (const auto& s : subs) {
    const auto pts = point_indices(*ctx, s);
    CHECK(by_points.emplace(pts, s).second);
    // any spanning subset of the points gives back the same matrix
    std::vector<Row> rows;
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) rows.push_back(ctx->point_coords(*it));
    CHECK(Subspace::from_rows(*ctx, rows) == s);
    CHECK(span_of_points(*ctx, pts) == s);
  }
}

TEST_CASE("span, meet and contains") {
  const auto ctx = GeometryContext::make(3, 3);
  const Point p = point_at(*ctx, 5);
  const Point r = point_at(*ctx, 17);
  CHECK(Subspace::of_point(p).dim() == 0);
  CHECK(span(*ctx, Subspace::empty(3), p) == Subspace::of_point(p));
  CHECK(span(*ctx, Subspace::of_point(p), r).dim() == 1);
  CHECK(span(*ctx, std::span<const Subspace>{}).is_empty());

  const Subspace plane = coordinate_subspace(*ctx, 3);
  const Point outside = make_point(*ctx, unit(*ctx, 3));
  CHECK(span(*ctx, plane, outside) == Subspace::whole(*ctx));

  const Subspace l = Subspace::from_rows(*ctx, {unit(*ctx, 0), unit(*ctx, 1)});
  const Subspace m = Subspace::from_rows(*ctx, {unit(*ctx, 2), unit(*ctx, 3)});
  CHECK(meet(*ctx, l, l) == l);
  CHECK(meet(*ctx, l, m).dim() == -1);
  const Subspace h1 = Subspace::hyperplane(*ctx, unit(*ctx, 0));
  const Subspace h2 = Subspace::hyperplane(*ctx, unit(*ctx, 1));
  CHECK(meet(*ctx, h1, h2).dim() == 1);

  CHECK(contains(*ctx, h1, make_point(*ctx, unit(*ctx, 2))));
  CHECK_FALSE(contains(*ctx, h1, make_point(*ctx, unit(*ctx, 0))));
  CHECK(contains(*ctx, l, l));
  CHECK_FALSE(contains(*ctx, l, plane));

  const auto other = GeometryContext::make(3, 4);
  CHECK(code_of([&] { meet(*ctx, l, coordinate_subspace(*other, 2)); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("Grassmann identity and duality, exhaustive in PG(3,2)") {
  const auto ctx = GeometryContext::make(2, 3);
  const auto subs = all_subspaces(*ctx);
  for (const auto& a : subs) {
    const Subspace d = dual(*ctx, a);
    CHECK(a.dim() + d.dim() == 2);
    CHECK(dual(*ctx, d) == a);
    const auto pa = point_indices(*ctx, a);
    for (const auto& b : subs) {
      const Subspace j = span(*ctx, a, b);
      const Subspace mt = meet(*ctx, a, b);
      CHECK(j.dim() + mt.dim() == a.dim() + b.dim());
      const auto pb = point_indices(*ctx, b);
      std::vector<std::size_t> common;
      std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(common));
      CHECK(point_indices(*ctx, mt) == common);
      const bool inside = oracle::subset(pa, pb);
      CHECK(contains(*ctx, b, a) == inside);
      CHECK(contains(*ctx, dual(*ctx, a), dual(*ctx, b)) == inside);
    }
  }
}

TEST_CASE("dual examples") {
  const auto ctx = GeometryContext::make(3, 3);
  CHECK(dual(*ctx, Subspace::whole(*ctx)).is_empty());
  CHECK(dual(*ctx, Subspace::empty(3)) == Subspace::whole(*ctx));
  const Point e0 = make_point(*ctx, unit(*ctx, 0));
  CHECK(dual(*ctx, Subspace::of_point(e0)) == Subspace::hyperplane(*ctx, unit(*ctx, 0)));
  for (const auto& l : enumerate_subspaces(*ctx, 1)) CHECK(dual(*ctx, dual(*ctx, l)) == l);
  for (const auto& h : enumerate_subspaces(*ctx, 2)) {
    const Point a = hyperplane_coords(*ctx, h);
    CHECK(Subspace::hyperplane(*ctx, a.coords) == h);
    const oracle::Space ref(ctx->field(), 3);
    CHECK(point_indices(*ctx, h) == ref.hyperplane(a.coords));
  }
}

TEST_CASE("incidence counts: every point lies on [n choose k]_q k-spaces") {
  for (auto [q, n] : {Space{2, 3}, Space{2, 4}, Space{3, 3}}) {
    const auto ctx = GeometryContext::make(q, n);
    for (int k = 1; k < n; ++k) {
      std::vector<std::size_t> count(ctx->num_points(), 0);
      for (const auto& s : enumerate_subspaces(*ctx, k)) {
        for (std::size_t p : point_indices(*ctx, s)) ++count[p];
      }
      const BigInt expected = gaussian(n, k, q);
      for (std::size_t c : count) CHECK(BigInt(static_cast<unsigned long>(c)) == expected);
    }
  }
}

TEST_CASE("subspaces within and through") {
  const auto ctx = GeometryContext::make(3, 3);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const int d = static_cast<int>(rng() % 4);
    const Subspace s = random_subspace(*ctx, d, rng);
    CHECK(s.dim() == d);
    for (int m = 0; m <= 3; ++m) {
      const auto within = subspaces_within(*ctx, s, m);
      CHECK(BigInt(static_cast<unsigned long>(within.size())) == gaussian(d + 1, m + 1, 3));
      for (const auto& w : within) CHECK(contains(*ctx, s, w));
      const auto through = subspaces_through(*ctx, s, m);
      CHECK(BigInt(static_cast<unsigned long>(through.size())) == gaussian(3 - d, m - d, 3));
      for (const auto& t : through) CHECK(contains(*ctx, t, s));
    }
  }
}

TEST_CASE("projection") {
  const auto ctx = GeometryContext::make(2, 3);
  const Subspace center = Subspace::of_point(make_point(*ctx, unit(*ctx, 3)));
  const Subspace screen = coordinate_subspace(*ctx, 3);
  const Point on_screen = make_point(*ctx, unit(*ctx, 1));
  CHECK(project_from(*ctx, center, screen, std::vector<Point>{on_screen}) == std::vector<Point>{on_screen});

  Row r = unit(*ctx, 1);
  r[3] = 1;
  const Point above = make_point(*ctx, r);
  CHECK(project_from(*ctx, center, screen, std::vector<Point>{on_screen, above}).size() == 1);

  CHECK(code_of([&] { project_from(*ctx, center, center, std::vector<Point>{on_screen}); }) ==
        ErrorCode::BadFrame);
  CHECK(code_of([&] {
          project_from(*ctx, center, screen, std::vector<Point>{make_point(*ctx, unit(*ctx, 3))});
        }) == ErrorCode::PointInCenter);

  // B0 of a construction instance seen from a point skew to it: in the equality
  // case each line through the center carries at most one point of B0.
  const auto shared = GeometryContext::make(2, 3);
  const BlockingSet b = construction1(shared, canonical_construction1_params(*shared, 1, 1));
  std::vector<Point> b0;
  for (std::size_t i : b.points()) b0.push_back(point_at(*shared, i));
  for (const Point& c : all_points(*shared)) {
    if (std::binary_search(b.points().begin(), b.points().end(), c.index)) continue;
    const SkewSpaceProfile prof = skew_space_profile(b, Subspace::of_point(c));
    // a complementary plane to the center
    for (const auto& h : enumerate_subspaces(*shared, 2)) {
      if (contains(*shared, h, c)) continue;
      const auto image = project_from(*shared, Subspace::of_point(c), h, b0);
      CHECK(image.size() <= b0.size());
      if (prof.equality) CHECK(image.size() == b0.size());
      break;
    }
  }
}

TEST_CASE("incidence table agrees with the oracle") {
  for (auto [q, n, k] : {std::tuple{2, 3, 1}, std::tuple{3, 2, 0}, std::tuple{2, 4, 2}}) {
    const auto ctx = GeometryContext::make(q, n);
    const oracle::Space ref(ctx->field(), n);
    const oracle::Blocking blk(ref, k);
    const IncidenceTable& tab = ctx->incidence(k);
    REQUIRE(tab.num_targets() == blk.targets().size());
    for (std::size_t t = 0; t < tab.num_targets(); ++t) {
      const auto pts = point_indices(*ctx, tab.target(t));
      CHECK(tab.target_index(tab.target(t)) == t);
      for (std::size_t e = 0; e < tab.num_elements(); ++e) {
        const bool inc = blk.incident(e, pts);
        CHECK(tab.blockers(t).test(e) == inc);
        CHECK(tab.covered_by(e).test(t) == inc);
      }
    }
    CHECK(&ctx->incidence(k) == &tab);
  }
}

TEST_CASE("random subspaces have the requested dimension") {
  const auto ctx = GeometryContext::make(4, 4);
  std::mt19937_64 rng(5);
  for (int m = -1; m <= 4; ++m) {
    for (int i = 0; i < 10; ++i) CHECK(random_subspace(*ctx, m, rng).dim() == m);
  }
}
