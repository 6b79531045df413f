#include "pgblock/blocking.hpp"

#include <algorithm>
#include <string>

namespace pgblock {

namespace {

std::vector<std::size_t> sorted_unique(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

Element dot(const FieldSpec& f, const Row& a, const Row& b) {
  Element s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = f.add(s, f.mul(a[i], b[i]));
  return s;
}

Bitset covered_targets(const BlockingSet& b, const IncidenceTable& table) {
  Bitset covered(table.num_targets());
  for (std::size_t p : b.points()) covered |= table.covered_by(table.point_element(p));
  for (std::size_t h : b.hyperplanes()) covered |= table.covered_by(table.hyperplane_element(h));
  return covered;
}

void require_middle(const BlockingSet& b) {
  if (b.ctx().n() != 2 * b.k() + 1) {
    throw Error(ErrorCode::WrongAmbient, "needs n = 2k + 1");
  }
}

BigInt q_power(int q, int e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(e));
  return r;
}

// Tangent/secant status for every point outside S.
struct PointLineStatus {
  std::vector<bool> in_s;
  std::vector<bool> on_tangent;
  std::vector<bool> on_secant;
};

PointLineStatus line_status(const GeometryContext& ctx, std::span<const std::size_t> s) {
  const IncidenceTable& lines = ctx.incidence(1);
  const std::size_t np = ctx.num_points();
  PointLineStatus st{std::vector<bool>(np, false), std::vector<bool>(np, false),
                     std::vector<bool>(np, false)};
  Bitset s_bits(lines.num_elements());
  for (std::size_t p : s) {
    if (p >= np) throw Error(ErrorCode::InvalidInput, "point index out of range");
    st.in_s[p] = true;
    s_bits.set(p);
  }
  std::vector<std::size_t> meets(lines.num_targets());
  for (std::size_t t = 0; t < lines.num_targets(); ++t) meets[t] = lines.blockers(t).count_and(s_bits);
  for (std::size_t p = 0; p < np; ++p) {
    if (st.in_s[p]) continue;
    lines.covered_by(p).for_each([&](std::size_t t) {
      if (meets[t] == 1) st.on_tangent[p] = true;
      if (meets[t] >= 2) st.on_secant[p] = true;
    });
  }
  return st;
}

}  // namespace

BlockingSet::BlockingSet(std::shared_ptr<const GeometryContext> ctx, int k,
                         std::vector<std::size_t> points, std::vector<std::size_t> hyperplanes)
    : ctx_(std::move(ctx)),
      k_(k),
      points_(sorted_unique(std::move(points))),
      hyperplanes_(sorted_unique(std::move(hyperplanes))) {
  if (k_ < 0 || k_ >= ctx_->n()) {
    throw Error(ErrorCode::DimensionMismatch, "target dimension must satisfy 0 <= k < n");
  }
  const std::size_t np = ctx_->num_points();
  if ((!points_.empty() && points_.back() >= np) || (!hyperplanes_.empty() && hyperplanes_.back() >= np)) {
    throw Error(ErrorCode::InvalidInput, "element index out of range");
  }
}

BlockingSet BlockingSet::from_elements(std::shared_ptr<const GeometryContext> ctx, int k,
                                       std::span<const std::size_t> elements) {
  const std::size_t np = ctx->num_points();
  std::vector<std::size_t> pts, hyps;
  for (std::size_t e : elements) {
    if (e < np) {
      pts.push_back(e);
    } else {
      hyps.push_back(e - np);
    }
  }
  return BlockingSet(std::move(ctx), k, std::move(pts), std::move(hyps));
}

std::vector<std::size_t> BlockingSet::elements() const {
  std::vector<std::size_t> out(points_);
  for (std::size_t h : hyperplanes_) out.push_back(ctx_->num_points() + h);
  return out;
}

Subspace BlockingSet::hyperplane(std::size_t i) const {
  return dual(*ctx_, Subspace::of_point(point_at(*ctx_, hyperplanes_.at(i))));
}

BlockingCheck is_blocking(const BlockingSet& b) {
  const IncidenceTable& table = b.ctx().incidence(b.k());
  const Bitset covered = covered_targets(b, table);
  for (std::size_t t = 0; t < table.num_targets(); ++t) {
    if (!covered.test(t)) return {false, table.target(t)};
  }
  return {true, std::nullopt};
}

std::uint64_t unblocked_count(const BlockingSet& b, int s) {
  if (s < 0 || s > b.ctx().n()) throw Error(ErrorCode::DimensionMismatch, "s out of range");
  const IncidenceTable& table = b.ctx().incidence(s);
  return table.num_targets() - covered_targets(b, table).count();
}

MinimalityCheck is_minimal(const BlockingSet& b) {
  const IncidenceTable& table = b.ctx().incidence(b.k());
  std::vector<int> multiplicity(table.num_targets(), 0);
  const auto elements = b.elements();
  for (std::size_t e : elements) {
    table.covered_by(e).for_each([&](std::size_t t) { ++multiplicity[t]; });
  }
  if (std::any_of(multiplicity.begin(), multiplicity.end(), [](int m) { return m == 0; })) {
    throw Error(ErrorCode::NotBlocking, "minimality is only defined for blocking sets");
  }
  for (std::size_t e : elements) {
    bool removable = true;
    table.covered_by(e).for_each([&](std::size_t t) {
      if (multiplicity[t] < 2) removable = false;
    });
    if (removable) {
      const std::size_t np = table.num_points();
      return {false, e < np ? ElementRef{ElementKind::Point, e} : ElementRef{ElementKind::Hyperplane, e - np}};
    }
  }
  return {true, std::nullopt};
}

BlockingSet dual_set(const BlockingSet& b) {
  return BlockingSet(b.shared_ctx(), b.ctx().n() - 1 - b.k(), b.hyperplanes(), b.points());
}

LineType line_type(const GeometryContext& ctx, const Subspace& line,
                   std::span<const std::size_t> point_set) {
  if (line.dim() != 1) throw Error(ErrorCode::NotALine, "expected a 1-space");
  const auto pts = point_indices(ctx, line);
  std::size_t hits = 0;
  for (std::size_t p : point_set) {
    if (std::binary_search(pts.begin(), pts.end(), p)) ++hits;
  }
  if (hits == 0) return LineType::Skew;
  return hits == 1 ? LineType::Tangent : LineType::Secant;
}

const char* to_string(LineType t) {
  switch (t) {
    case LineType::Skew: return "skew";
    case LineType::Tangent: return "tangent";
    case LineType::Secant: return "secant";
  }
  return "unknown";
}

std::optional<std::size_t> tangent_secant_point(const GeometryContext& ctx,
                                                std::span<const std::size_t> s) {
  const auto st = line_status(ctx, s);
  for (std::size_t p = 0; p < ctx.num_points(); ++p) {
    if (!st.in_s[p] && st.on_tangent[p] && st.on_secant[p]) return p;
  }
  return std::nullopt;
}

TangentClosure tangent_closure(const GeometryContext& ctx, std::span<const std::size_t> s) {
  if (s.empty()) throw Error(ErrorCode::InvalidInput, "tangent closure needs a nonempty point set");
  const auto st = line_status(ctx, s);
  TangentClosure out{};
  for (std::size_t p = 0; p < ctx.num_points(); ++p) {
    if (st.in_s[p] || !st.on_tangent[p]) out.closure.push_back(p);
    if (!out.violating_point && !st.in_s[p] && st.on_tangent[p] && st.on_secant[p]) {
      out.violating_point = p;
    }
  }
  out.hypothesis_holds = !out.violating_point.has_value();

  const Subspace spanned = span_of_points(ctx, out.closure);
  out.dim = spanned.dim();
  out.is_subspace = point_indices(ctx, spanned).size() == out.closure.size();

  const std::size_t size = sorted_unique({s.begin(), s.end()}).size();
  out.expected_dim = 0;
  while (theta(out.expected_dim, ctx.q()) < static_cast<unsigned long>(size)) ++out.expected_dim;
  return out;
}

std::optional<std::pair<std::size_t, std::size_t>> point_on_hyperplane(const BlockingSet& b) {
  const auto& ctx = b.ctx();
  for (std::size_t h : b.hyperplanes()) {
    const Row a = ctx.point_coords(h);
    for (std::size_t p : b.points()) {
      if (dot(ctx.field(), a, ctx.point_coords(p)) == 0) return std::pair{p, h};
    }
  }
  return std::nullopt;
}

SkewSpaceProfile skew_space_profile(const BlockingSet& b, const Subspace& rho) {
  require_middle(b);
  const auto& ctx = b.ctx();
  const int k = b.k();
  if (rho.ambient() != ctx.n() || rho.dim() != k - 1) {
    throw Error(ErrorCode::DimensionMismatch, "rho must be a (k-1)-space");
  }
  for (std::size_t p : b.points()) {
    if (contains(ctx, rho, point_at(ctx, p))) {
      throw Error(ErrorCode::RhoMeetsB0, "rho contains point " + std::to_string(p) + " of B0");
    }
  }

  SkewSpaceProfile out{};
  for (std::size_t h : b.hyperplanes()) {
    const Row a = ctx.point_coords(h);
    const bool through = std::all_of(rho.basis().begin(), rho.basis().end(),
                                     [&](const Row& r) { return dot(ctx.field(), a, r) == 0; });
    if (through) ++out.hyperplanes_through_rho;
  }
  const BigInt qk = q_power(ctx.q(), k);
  const BigInt b0 = static_cast<unsigned long>(b.points().size());
  out.bound_denominator = qk;
  out.bound_numerator = (ctx.q() + 1) * qk - b0;
  const BigInt lhs = static_cast<unsigned long>(out.hyperplanes_through_rho) * qk;
  out.bound_holds = lhs >= out.bound_numerator;
  out.equality = lhs == out.bound_numerator;
  if (out.equality) {
    bool at_most_one = true;
    for (const auto& kappa : subspaces_through(ctx, rho, k)) {
      const auto pts = point_indices(ctx, kappa);
      std::size_t hits = 0;
      for (std::size_t p : b.points()) {
        if (std::binary_search(pts.begin(), pts.end(), p)) ++hits;
      }
      if (hits > 1) {
        at_most_one = false;
        break;
      }
    }
    out.at_most_one_point_per_k_space = at_most_one;
    out.b0_multiple_of_qk = (b0 % qk) == 0;
  }
  return out;
}

HyperplanesThroughPoint bp_hyperplanes(const BlockingSet& b, const Subspace& sigma, const Point& p) {
  require_middle(b);
  const auto& ctx = b.ctx();
  const int k = b.k();
  if (k < 1) throw Error(ErrorCode::WrongParameters, "needs k >= 1");
  if (sigma.ambient() != ctx.n() || sigma.dim() != k + 1) {
    throw Error(ErrorCode::DimensionMismatch, "Sigma must be a (k+1)-space");
  }
  const auto sigma_points = point_indices(ctx, sigma);
  for (std::size_t x : b.points()) {
    if (!std::binary_search(sigma_points.begin(), sigma_points.end(), x)) {
      throw Error(ErrorCode::B0NotInSigma, "point " + std::to_string(x) + " of B0 is outside Sigma");
    }
  }
  if (!std::binary_search(sigma_points.begin(), sigma_points.end(), p.index)) {
    throw Error(ErrorCode::PNotInSigma, "P must lie in Sigma");
  }
  if (std::binary_search(b.points().begin(), b.points().end(), p.index)) {
    throw Error(ErrorCode::PInB0, "P must not belong to B0");
  }

  HyperplanesThroughPoint out{};
  const auto over_sigma = point_indices(ctx, dual(ctx, sigma));  // hyperplanes containing Sigma
  for (std::size_t h : b.hyperplanes()) {
    const Row a = ctx.point_coords(h);
    if (dot(ctx.field(), a, p.coords) != 0) continue;
    if (std::binary_search(over_sigma.begin(), over_sigma.end(), h)) continue;
    out.members.push_back(h);
  }

  out.which = HyperplanesThroughPoint::Case::Count;
  for (const auto& rho : subspaces_within(ctx, sigma, k)) {
    if (!contains(ctx, rho, p)) continue;
    // hyperplanes meeting Sigma exactly in rho
    bool all_present = true;
    for (std::size_t h : point_indices(ctx, dual(ctx, rho))) {
      if (std::binary_search(over_sigma.begin(), over_sigma.end(), h)) continue;
      if (!std::binary_search(out.members.begin(), out.members.end(), h)) {
        all_present = false;
        break;
      }
    }
    if (all_present) {
      out.which = HyperplanesThroughPoint::Case::FullPencil;
      out.rho = rho;
      break;
    }
  }
  const int q = ctx.q();
  out.claimed_bound = out.which == HyperplanesThroughPoint::Case::FullPencil
                          ? q_power(q, k)
                          : q_power(q, k - 1) * (q + 1);
  out.lemma_applies = is_blocking(b).blocking;
  // the dichotomy is only claimed for blocking sets
  out.bound_holds = !out.lemma_applies ||
                    BigInt(static_cast<unsigned long>(out.members.size())) >= out.claimed_bound;
  return out;
}

}  // namespace pgblock
