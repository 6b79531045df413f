#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pgblock/blocking.hpp"
#include "pgblock/constructions.hpp"
#include "pgblock/counting.hpp"

using namespace pgblock;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidInput;
}

BigInt pw(long q, unsigned long e) {
  BigInt r = 1;
  for (unsigned long i = 0; i < e; ++i) r *= q;
  return r;
}

}  // namespace

TEST_CASE("gaussian coefficients") {
  CHECK(gaussian(4, 2, 2) == 35);
  CHECK(gaussian(3, 5, 2) == 0);
  CHECK(gaussian(4, 2, 3) == 130);
  CHECK(gaussian(4, -1, 3) == 0);
  CHECK(gaussian(0, 0, 7) == 1);
  CHECK(code_of([] { gaussian(4, 2, 6); }) == ErrorCode::InvalidQ);
  CHECK(code_of([] { gaussian(4, 2, 1); }) == ErrorCode::InvalidQ);

  // well past 64 bits
  CHECK(gaussian(40, 20, 9) > BigInt("1000000000000000000000000000000000000000"));

  for (long q : {2, 3, 4, 5}) {
    for (long a = 1; a <= 12; ++a) {
      for (long b = 0; b <= a; ++b) {
        CAPTURE(q);
        CAPTURE(a);
        CAPTURE(b);
        CHECK(gaussian(a, b, q) == gaussian(a - 1, b - 1, q) + pw(q, b) * gaussian(a - 1, b, q));
        CHECK(gaussian(a, b, q) == pw(q, a - b) * gaussian(a - 1, b - 1, q) + gaussian(a - 1, b, q));
        CHECK(gaussian(a, b, q) == gaussian(a, a - b, q));
      }
    }
  }
}

TEST_CASE("theta") {
  CHECK(theta(2, 2) == 7);
  CHECK(theta(-1, 5) == 0);
  CHECK(theta(3, 3) == 40);
  for (long q : {2, 3, 4, 5, 7, 8, 9}) {
    for (long m = 0; m <= 12; ++m) CHECK(theta(m, q) == gaussian(m + 1, 1, q));
  }
}

TEST_CASE("metsch bound examples") {
  CHECK(metsch_lower_bound(3, 2, 1, 1, 0) == 34);
  CHECK(metsch_lower_bound(3, 2, 1, 1, 3) == 16);
  CHECK(code_of([] { metsch_lower_bound(3, 2, 1, 1, 4); }) == ErrorCode::HypothesisViolated);
  CHECK(code_of([] { metsch_lower_bound(3, 2, 2, 2, 1); }) == ErrorCode::HypothesisViolated);

  // inside a (k+1)-space, d = 1, s = 0: (q + 1 - b) q^k
  for (int k = 1; k <= 4; ++k) {
    for (int q : {2, 3, 4, 5}) {
      for (int b = 0; b <= q + 1; ++b) {
        CHECK(metsch_dual_lower_bound(k + 1, q, 1, 0, b) == BigInt(q + 1 - b) * pw(q, k));
      }
    }
  }
}

TEST_CASE("metsch bound against direct counts in PG(3,2)") {
  const auto ctx = GeometryContext::make(2, 3);
  const oracle::Space ref(ctx->field(), 3);
  std::vector<std::vector<oracle::PointSet>> spaces;
  for (int s = 0; s <= 2; ++s) spaces.push_back(ref.subspaces(s));
  const oracle::Blocking blk(ref, 1);

  for (std::size_t size = 0; size <= 3; ++size) {
    oracle::for_each_subset(15, size, [&](const std::vector<std::size_t>& pts) {
      for (int s = 0; s <= 2; ++s) {
        const std::size_t actual = blk.unblocked(pts, spaces[s]);
        const BlockingSet b(ctx, std::min(s, 2), pts, {});
        CHECK(unblocked_count(b, s) == actual);
        CHECK(BigInt(static_cast<unsigned long>(actual)) >=
              metsch_lower_bound(3, 2, 1, s, static_cast<unsigned long>(size)));
        // the hyperplane form, with the same indices read as dual coordinates
        const std::vector<std::size_t> hs = pts;
        const std::vector<std::size_t> as_elements = [&] {
          std::vector<std::size_t> out;
          for (std::size_t h : hs) out.push_back(15 + h);
          return out;
        }();
        const std::size_t actual_dual = blk.unblocked(as_elements, spaces[s]);
        const BlockingSet hb(ctx, std::min(s, 2), {}, hs);
        CHECK(unblocked_count(hb, s) == actual_dual);
        CHECK(BigInt(static_cast<unsigned long>(actual_dual)) >=
              metsch_dual_lower_bound(3, 2, 1, s, static_cast<unsigned long>(size)));
      }
    });
  }

  // empty hyperplane set, d = 2, s = 1: all 35 lines survive
  const BigInt lb = metsch_dual_lower_bound(3, 2, 2, 1, 0);
  CHECK(lb <= 35);
  CHECK(unblocked_count(BlockingSet(ctx, 1, {}, {}), 1) == 35);
}

TEST_CASE("metsch dual form is the point form for the dual dimension") {
  for (int n = 2; n <= 6; ++n) {
    for (int q : {2, 3, 4}) {
      for (int d = 0; d <= n; ++d) {
        for (int s = std::max(0, d - 1); s < n; ++s) {
          if (n < d + (n - 1 - s)) continue;
          const BigInt td = theta(d, q);
          for (BigInt b = 0; b <= td; b += std::max<long>(1, td.get_si() / 3)) {
            CHECK(metsch_dual_lower_bound(n, q, d, s, b) == metsch_lower_bound(n, q, d, n - 1 - s, b));
          }
        }
      }
    }
  }
}

TEST_CASE("certified exponential") {
  for (int num = 0; num <= 12; ++num) {
    const BigRational x(num, 12);
    const BigRational up = exp_upper_bound(x);
    const long double truth = std::exp(static_cast<long double>(num) / 12.0L);
    CHECK(static_cast<long double>(up.get_d()) >= truth * (1 - 1e-15L));
    CHECK(up.get_d() - static_cast<double>(truth) < 1e-12);
  }
  CHECK(code_of([] { exp_upper_bound(BigRational(3, 2)); }) == ErrorCode::InvalidInput);
}

TEST_CASE("heger-nagy bound") {
  const auto b3 = heger_nagy_upper_bound(4, 2, 3);
  CHECK(b3.approx == doctest::Approx(220.2).epsilon(0.001));
  CHECK(BigRational(gaussian(4, 2, 3)) < b3.value);
  const auto b2 = heger_nagy_upper_bound(4, 2, 2);
  CHECK(b2.approx == doctest::Approx(62.3).epsilon(0.001));
  CHECK(BigRational(gaussian(4, 2, 2)) < b2.value);
  CHECK(b2.approx >= b2.value.get_d());
  CHECK(code_of([] { heger_nagy_upper_bound(4, 2, 10); }) == ErrorCode::InvalidQ);
}

TEST_CASE("main theorem bound") {
  CHECK(main_theorem_bound(3, 1, 2).value == BigInt(6));
  CHECK(main_theorem_bound(3, 1, 2).which == MainTheoremBound::Case::Middle);
  CHECK(main_theorem_bound(5, 1, 2).value == BigInt(7));
  CHECK(main_theorem_bound(4, 2, 2).is_open());
  CHECK(main_theorem_bound(2, 1, 2).is_open());
  CHECK(main_theorem_bound(4, 1, 2).is_open());
  CHECK(main_theorem_bound(4, 2, 3).value == theta(2, 3));
  CHECK(main_theorem_bound(2, 0, 3).value == BigInt(4));
  CHECK(main_theorem_bound(2, 1, 3).value == BigInt(4));
  CHECK(main_theorem_bound(3, 1, 3).value == BigInt(12));

  for (int q : {2, 3, 4, 5}) {
    for (int n = 1; n <= 9; ++n) {
      for (int k = 0; k < n; ++k) {
        const auto a = main_theorem_bound(n, k, q);
        const auto b = main_theorem_bound(n, n - 1 - k, q);
        CHECK(a.value == b.value);
        CHECK(a.is_open() == b.is_open());
      }
    }
  }
}

TEST_CASE("beutelspacher classification") {
  const auto ctx = GeometryContext::make(2, 3);
  const auto plane = point_indices(*ctx, coordinate_subspace(*ctx, 3));
  const auto r = beutelspacher_classify(*ctx, plane, 1);
  CHECK(r.kind == BeutelspacherClass::ContainsSpace);
  CHECK(point_indices(*ctx, *r.contained_space) == plane);

  auto bigger = plane;
  bigger.push_back(14);
  CHECK(beutelspacher_classify(*ctx, bigger, 1).kind == BeutelspacherClass::ContainsSpace);
  CHECK(beutelspacher_classify(*ctx, std::vector<std::size_t>{0, 1, 2}, 1).kind ==
        BeutelspacherClass::ViolatesBound);
}

TEST_CASE("beutelspacher: non-trivial minimal blocking sets of PG(2,4)") {
  const auto ctx = GeometryContext::make(4, 2);
  const oracle::Space ref(ctx->field(), 2);
  const oracle::Blocking blk(ref, 1);

  // the subplane over GF(2)
  std::vector<std::size_t> baer;
  for (std::size_t i = 0; i < ref.num_points(); ++i) {
    const auto& v = ref.point(i);
    if (std::all_of(v.begin(), v.end(), [](Element x) { return x <= 1; })) baer.push_back(i);
  }
  REQUIRE(baer.size() == 7);
  REQUIRE(blk.blocks(baer));
  CHECK(beutelspacher_classify(*ctx, baer, 1).kind == BeutelspacherClass::LargeNonTrivial);

  // random blocking sets shrunk to minimal ones
  std::mt19937_64 rng(2024);
  int nontrivial = 0;
  for (int trial = 0; trial < 60; ++trial) {
    auto s = oracle::random_subset(ref.num_points(), 14, rng);
    if (!blk.blocks(s)) continue;
    std::shuffle(s.begin(), s.end(), rng);
    for (std::size_t i = 0; i < s.size();) {
      auto t = s;
      t.erase(t.begin() + static_cast<long>(i));
      if (blk.blocks(t)) s = std::move(t); else ++i;
    }
    std::sort(s.begin(), s.end());
    bool has_line = false;
    for (const auto& l : blk.targets()) has_line = has_line || oracle::subset(l, s);
    const auto r = beutelspacher_classify(*ctx, s, 1);
    if (has_line) {
      CHECK(r.kind == BeutelspacherClass::ContainsSpace);
    } else {
      ++nontrivial;
      CHECK(s.size() >= 7);
      CHECK(r.kind == BeutelspacherClass::LargeNonTrivial);
    }
  }
  CHECK(nontrivial > 0);
}

TEST_CASE("beutelspacher threshold at perfect squares is exact") {
  // PG(2,9), k=1: theta_1 = 10, threshold 10 + 3 = 13 exactly
  const auto ctx = GeometryContext::make(9, 2);
  std::vector<std::size_t> s;
  for (std::size_t i = 0; s.size() < 13; i += 7) s.push_back(i);
  std::sort(s.begin(), s.end());
  bool has_line = false;
  for (const auto& l : enumerate_subspaces(*ctx, 1)) {
    has_line = has_line || oracle::subset(point_indices(*ctx, l), s);
  }
  REQUIRE_FALSE(has_line);
  CHECK(beutelspacher_classify(*ctx, s, 1).kind == BeutelspacherClass::LargeNonTrivial);
  s.pop_back();
  CHECK(beutelspacher_classify(*ctx, s, 1).kind == BeutelspacherClass::ViolatesBound);
}
