#include "pgblock/geometry.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace pgblock {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kSaturated / b ? kSaturated : a * b;
}

void require_width(const GeometryContext& ctx, std::span<const Element> row) {
  if (static_cast<int>(row.size()) != ctx.width()) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(ctx.width()) + " coordinates, got " +
                    std::to_string(row.size()));
  }
  for (Element x : row) {
    if (!ctx.field().contains(x)) {
      throw Error(ErrorCode::DimensionMismatch, "coordinate outside the field");
    }
  }
}

void require_ambient(const GeometryContext& ctx, const Subspace& s) {
  if (s.ambient() != ctx.n()) {
    throw Error(ErrorCode::DimensionMismatch,
                "subspace of PG(" + std::to_string(s.ambient()) + ", q) used in PG(" +
                    std::to_string(ctx.n()) + ", q)");
  }
}

// v -= factor * row
void axpy(const FieldSpec& f, Row& v, Element factor, const Row& row) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < v.size(); ++j) {
    v[j] = f.sub(v[j], f.mul(factor, row[j]));
  }
}

// Reduces v against a reduced echelon basis; v ends up zero iff it lies in
// the row space.
void reduce_against(const FieldSpec& f, Row& v, const std::vector<Row>& basis,
                    const std::vector<int>& pivots) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    axpy(f, v, v[static_cast<std::size_t>(pivots[i])], basis[i]);
  }
}

bool is_zero(const Row& v) {
  return std::all_of(v.begin(), v.end(), [](Element x) { return x == 0; });
}

}  // namespace

// ---------------------------------------------------------------------------
// GeometryContext

GeometryContext::GeometryContext(FieldSpec field, int n) : field_(std::move(field)), n_(n) {
  if (n < 1) throw Error(ErrorCode::DimensionMismatch, "projective dimension must be at least 1");
  theta_.assign(static_cast<std::size_t>(n) + 2, 0);
  std::uint64_t power = 1;
  std::uint64_t sum = 0;
  for (int m = 0; m <= n; ++m) {
    sum = sat_add(sum, power);
    power = sat_mul(power, static_cast<std::uint64_t>(field_.q()));
    theta_[static_cast<std::size_t>(m) + 1] = static_cast<std::size_t>(sum);
  }
  num_points_ = theta_.back();
}

GeometryContext::~GeometryContext() = default;

std::shared_ptr<const GeometryContext> GeometryContext::make(FieldSpec field, int n) {
  return std::make_shared<const GeometryContext>(std::move(field), n);
}

std::shared_ptr<const GeometryContext> GeometryContext::make(int q, int n) {
  return make(FieldSpec::of_order(q), n);
}

std::size_t GeometryContext::point_index(std::span<const Element> normalized) const {
  const auto q = static_cast<std::size_t>(field_.q());
  int lead = 0;
  while (lead <= n_ && normalized[static_cast<std::size_t>(lead)] == 0) ++lead;
  std::size_t tail = 0;
  for (int j = lead + 1; j <= n_; ++j) tail = tail * q + normalized[static_cast<std::size_t>(j)];
  return theta_[static_cast<std::size_t>(n_ - lead)] + tail;
}

Row GeometryContext::point_coords(std::size_t index) const {
  if (index >= num_points_) {
    throw Error(ErrorCode::InvalidInput, "point index " + std::to_string(index) + " out of range");
  }
  const auto q = static_cast<std::size_t>(field_.q());
  Row coords(static_cast<std::size_t>(n_) + 1, 0);
  for (int lead = n_; lead >= 0; --lead) {
    // points with leading position `lead` occupy [theta_{n-lead-1}, theta_{n-lead})
    const std::size_t start = theta_[static_cast<std::size_t>(n_ - lead)];
    const std::size_t end = theta_[static_cast<std::size_t>(n_ - lead) + 1];
    if (index < end) {
      std::size_t tail = index - start;
      coords[static_cast<std::size_t>(lead)] = 1;
      for (int j = n_; j > lead; --j) {
        coords[static_cast<std::size_t>(j)] = static_cast<Element>(tail % q);
        tail /= q;
      }
      break;
    }
  }
  return coords;
}

const IncidenceTable& GeometryContext::incidence(int k) const {
  std::lock_guard lock(cache_mutex_);
  auto& slot = incidence_cache_[k];
  if (!slot) slot = std::make_unique<IncidenceTable>(*this, k);
  return *slot;
}

// ---------------------------------------------------------------------------
// Points

bool normalize(const FieldSpec& field, Row& coords) {
  auto lead = std::find_if(coords.begin(), coords.end(), [](Element x) { return x != 0; });
  if (lead == coords.end()) throw Error(ErrorCode::InvalidInput, "the zero vector is not a point");
  if (*lead == 1) return false;
  const Element scale = field.inv(*lead);
  for (auto it = lead; it != coords.end(); ++it) *it = field.mul(*it, scale);
  return true;
}

Point make_point(const GeometryContext& ctx, Row coords) {
  require_width(ctx, coords);
  normalize(ctx.field(), coords);
  const std::size_t index = ctx.point_index(coords);
  return Point{std::move(coords), index};
}

Point point_at(const GeometryContext& ctx, std::size_t index) {
  return Point{ctx.point_coords(index), index};
}

// ---------------------------------------------------------------------------
// Subspaces

std::vector<Row> rref(const FieldSpec& f, std::vector<Row> rows) {
  if (rows.empty()) return rows;
  const std::size_t width = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < width && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const Element scale = f.inv(rows[rank][col]);
    for (auto& x : rows[rank]) x = f.mul(x, scale);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != rank) axpy(f, rows[i], rows[i][col], rows[rank]);
    }
    ++rank;
  }
  rows.resize(rank);
  return rows;
}

Subspace Subspace::empty(int n) {
  Subspace s;
  s.n_ = n;
  return s;
}

Subspace Subspace::whole(const GeometryContext& ctx) {
  std::vector<Row> rows(static_cast<std::size_t>(ctx.width()), Row(static_cast<std::size_t>(ctx.width()), 0));
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i][i] = 1;
  return from_rref(ctx.n(), std::move(rows));
}

Subspace Subspace::from_rows(const GeometryContext& ctx, std::vector<Row> rows) {
  for (const auto& r : rows) require_width(ctx, r);
  return from_rref(ctx.n(), rref(ctx.field(), std::move(rows)));
}

Subspace Subspace::of_point(const Point& p) {
  return from_rref(static_cast<int>(p.coords.size()) - 1, {p.coords});
}

Subspace Subspace::hyperplane(const GeometryContext& ctx, Row dual_coords) {
  const Point a = make_point(ctx, std::move(dual_coords));
  return dual(ctx, of_point(a));
}

Subspace Subspace::from_rref(int n, std::vector<Row> rows) {
  Subspace s;
  s.n_ = n;
  s.rows_ = std::move(rows);
  return s;
}

std::vector<int> Subspace::pivots() const {
  std::vector<int> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) {
    auto it = std::find_if(r.begin(), r.end(), [](Element x) { return x != 0; });
    out.push_back(static_cast<int>(it - r.begin()));
  }
  return out;
}

std::size_t SubspaceHash::operator()(const Subspace& s) const noexcept {
  std::size_t h = std::hash<int>{}(s.ambient()) ^ 0x9e3779b97f4a7c15ULL;
  for (const auto& r : s.basis()) {
    for (Element x : r) h = (h ^ x) * 0x100000001b3ULL;
    h = (h ^ 0xff) * 0x100000001b3ULL;
  }
  return h;
}

Subspace span(const GeometryContext& ctx, std::span<const Subspace> parts) {
  std::vector<Row> rows;
  for (const auto& part : parts) {
    require_ambient(ctx, part);
    rows.insert(rows.end(), part.basis().begin(), part.basis().end());
  }
  if (rows.empty()) return Subspace::empty(ctx.n());
  return Subspace::from_rref(ctx.n(), rref(ctx.field(), std::move(rows)));
}

Subspace span(const GeometryContext& ctx, const Subspace& a, const Subspace& b) {
  const Subspace parts[] = {a, b};
  return span(ctx, parts);
}

Subspace span(const GeometryContext& ctx, const Subspace& a, const Point& p) {
  require_width(ctx, p.coords);
  return span(ctx, a, Subspace::of_point(p));
}

Subspace span_of_points(const GeometryContext& ctx, std::span<const std::size_t> point_indices) {
  std::vector<Row> rows;
  rows.reserve(point_indices.size());
  for (std::size_t i : point_indices) rows.push_back(ctx.point_coords(i));
  if (rows.empty()) return Subspace::empty(ctx.n());
  return Subspace::from_rref(ctx.n(), rref(ctx.field(), std::move(rows)));
}

Subspace dual(const GeometryContext& ctx, const Subspace& a) {
  require_ambient(ctx, a);
  const auto& f = ctx.field();
  const auto width = static_cast<std::size_t>(ctx.width());
  if (a.is_empty()) return Subspace::whole(ctx);
  const auto pivots = a.pivots();
  std::vector<bool> is_pivot(width, false);
  for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<Row> null_rows;
  for (std::size_t free = 0; free < width; ++free) {
    if (is_pivot[free]) continue;
    Row v(width, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      v[static_cast<std::size_t>(pivots[i])] = f.neg(a.basis()[i][free]);
    }
    null_rows.push_back(std::move(v));
  }
  if (null_rows.empty()) return Subspace::empty(ctx.n());
  return Subspace::from_rref(ctx.n(), rref(f, std::move(null_rows)));
}

Subspace meet(const GeometryContext& ctx, const Subspace& a, const Subspace& b) {
  return dual(ctx, span(ctx, dual(ctx, a), dual(ctx, b)));
}

bool contains(const GeometryContext& ctx, const Subspace& outer, std::span<const Element> vector) {
  require_ambient(ctx, outer);
  Row v(vector.begin(), vector.end());
  reduce_against(ctx.field(), v, outer.basis(), outer.pivots());
  return is_zero(v);
}

bool contains(const GeometryContext& ctx, const Subspace& outer, const Subspace& inner) {
  require_ambient(ctx, outer);
  require_ambient(ctx, inner);
  if (inner.dim() > outer.dim()) return false;
  const auto pivots = outer.pivots();
  for (const auto& r : inner.basis()) {
    Row v = r;
    reduce_against(ctx.field(), v, outer.basis(), pivots);
    if (!is_zero(v)) return false;
  }
  return true;
}

bool contains(const GeometryContext& ctx, const Subspace& outer, const Point& p) {
  require_width(ctx, p.coords);
  return contains(ctx, outer, std::span<const Element>(p.coords));
}

Point hyperplane_coords(const GeometryContext& ctx, const Subspace& hyperplane) {
  if (hyperplane.dim() != ctx.n() - 1) {
    throw Error(ErrorCode::DimensionMismatch, "not a hyperplane");
  }
  const Subspace a = dual(ctx, hyperplane);
  return Point{a.basis().front(), ctx.point_index(a.basis().front())};
}

std::vector<std::size_t> point_indices(const GeometryContext& ctx, const Subspace& s) {
  require_ambient(ctx, s);
  const auto& f = ctx.field();
  const auto q = static_cast<Element>(f.q());
  const auto& basis = s.basis();
  const std::size_t rank = basis.size();
  std::vector<std::size_t> out;
  // Coefficient vectors whose first nonzero entry is 1 give every point once;
  // because the basis is reduced, the combination is already normalized.
  for (std::size_t lead = 0; lead < rank; ++lead) {
    const std::size_t free = rank - lead - 1;
    std::vector<Element> coef(free, 0);
    while (true) {
      Row v = basis[lead];
      for (std::size_t j = 0; j < free; ++j) {
        if (coef[j] == 0) continue;
        const auto& r = basis[lead + 1 + j];
        for (std::size_t c = 0; c < v.size(); ++c) v[c] = f.add(v[c], f.mul(coef[j], r[c]));
      }
      out.push_back(ctx.point_index(v));
      std::size_t pos = 0;
      while (pos < free && ++coef[pos] == q) coef[pos++] = 0;
      if (pos == free) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Point> all_points(const GeometryContext& ctx) {
  if (ctx.num_points() > kEnumerationBudget) {
    throw Error(ErrorCode::BudgetExceeded, "too many points to enumerate");
  }
  std::vector<Point> out;
  out.reserve(ctx.num_points());
  for (std::size_t i = 0; i < ctx.num_points(); ++i) out.push_back(point_at(ctx, i));
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration

std::uint64_t subspace_count(int n, int m, int q) {
  // Gaussian coefficient [n+1, m+1]_q via the q-Pascal rule, saturating.
  const int a = n + 1;
  const int b = m + 1;
  if (b < 0 || b > a) return 0;
  std::vector<std::vector<std::uint64_t>> g(static_cast<std::size_t>(a) + 1,
                                            std::vector<std::uint64_t>(static_cast<std::size_t>(b) + 1, 0));
  for (int i = 0; i <= a; ++i) {
    g[static_cast<std::size_t>(i)][0] = 1;
    for (int j = 1; j <= std::min(i, b); ++j) {
      std::uint64_t qj = 1;
      for (int t = 0; t < j; ++t) qj = sat_mul(qj, static_cast<std::uint64_t>(q));
      g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          sat_add(g[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(j) - 1],
                  sat_mul(qj, g[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(j)]));
    }
  }
  return g[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
}

SubspaceEnumerator::SubspaceEnumerator(const FieldSpec& field, int n, int m)
    : field_(&field), n_(n), m_(m) {
  if (m < -1 || m > n) {
    done_ = true;
    return;
  }
  pivots_.resize(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= m; ++i) pivots_[static_cast<std::size_t>(i)] = i;
  load_pattern();
}

void SubspaceEnumerator::load_pattern() {
  free_slots_.clear();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n_) + 1, false);
  for (int c : pivots_) is_pivot[static_cast<std::size_t>(c)] = true;
  for (std::size_t row = 0; row < pivots_.size(); ++row) {
    for (int col = pivots_[row] + 1; col <= n_; ++col) {
      if (!is_pivot[static_cast<std::size_t>(col)]) free_slots_.emplace_back(static_cast<int>(row), col);
    }
  }
  free_values_.assign(free_slots_.size(), 0);
}

bool SubspaceEnumerator::advance_pattern() {
  // next (m+1)-combination of {0..n} in lexicographic order
  const int r = static_cast<int>(pivots_.size());
  int i = r - 1;
  while (i >= 0 && pivots_[static_cast<std::size_t>(i)] == n_ + 1 - r + i) --i;
  if (i < 0) return false;
  ++pivots_[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < r; ++j) pivots_[static_cast<std::size_t>(j)] = pivots_[static_cast<std::size_t>(j) - 1] + 1;
  load_pattern();
  return true;
}

std::optional<Subspace> SubspaceEnumerator::next() {
  if (done_) return std::nullopt;
  const auto width = static_cast<std::size_t>(n_) + 1;
  std::vector<Row> rows(pivots_.size(), Row(width, 0));
  for (std::size_t i = 0; i < pivots_.size(); ++i) rows[i][static_cast<std::size_t>(pivots_[i])] = 1;
  for (std::size_t s = 0; s < free_slots_.size(); ++s) {
    rows[static_cast<std::size_t>(free_slots_[s].first)][static_cast<std::size_t>(free_slots_[s].second)] =
        free_values_[s];
  }
  Subspace current = Subspace::from_rref(n_, std::move(rows));

  // odometer over free entries, last slot fastest
  const auto q = static_cast<Element>(field_->q());
  bool carry = true;
  for (std::size_t pos = free_values_.size(); carry && pos-- > 0;) {
    if (++free_values_[pos] < q) {
      carry = false;
    } else {
      free_values_[pos] = 0;
    }
  }
  if (carry && !advance_pattern()) done_ = true;
  return current;
}

std::vector<Subspace> enumerate_subspaces(const GeometryContext& ctx, int m) {
  if (m < -1 || m > ctx.n()) {
    throw Error(ErrorCode::DimensionMismatch, "subspace dimension out of range");
  }
  const std::uint64_t count = subspace_count(ctx.n(), m, ctx.q());
  if (count > kEnumerationBudget) {
    throw Error(ErrorCode::BudgetExceeded,
                "enumerating " + std::to_string(count) + " subspaces exceeds the budget");
  }
  std::vector<Subspace> out;
  out.reserve(static_cast<std::size_t>(count));
  SubspaceEnumerator it(ctx.field(), ctx.n(), m);
  while (auto s = it.next()) out.push_back(std::move(*s));
  return out;
}

std::vector<Subspace> subspaces_within(const GeometryContext& ctx, const Subspace& s, int m) {
  require_ambient(ctx, s);
  std::vector<Subspace> out;
  if (m < -1 || m > s.dim()) return out;
  if (subspace_count(s.dim(), m, ctx.q()) > kEnumerationBudget) {
    throw Error(ErrorCode::BudgetExceeded, "too many subspaces to enumerate");
  }
  const auto& f = ctx.field();
  const auto width = static_cast<std::size_t>(ctx.width());
  SubspaceEnumerator it(f, s.dim(), m);
  while (auto local = it.next()) {
    std::vector<Row> rows;
    rows.reserve(local->basis().size());
    for (const auto& lr : local->basis()) {
      Row v(width, 0);
      for (std::size_t i = 0; i < lr.size(); ++i) {
        if (lr[i] == 0) continue;
        for (std::size_t c = 0; c < width; ++c) v[c] = f.add(v[c], f.mul(lr[i], s.basis()[i][c]));
      }
      rows.push_back(std::move(v));
    }
    out.push_back(Subspace::from_rref(ctx.n(), rref(f, std::move(rows))));
  }
  return out;
}

std::vector<Subspace> subspaces_through(const GeometryContext& ctx, const Subspace& s, int m) {
  std::vector<Subspace> out;
  if (m < s.dim() || m > ctx.n()) return out;
  for (const auto& t : subspaces_within(ctx, dual(ctx, s), ctx.n() - 1 - m)) {
    out.push_back(dual(ctx, t));
  }
  return out;
}

std::vector<Point> project_from(const GeometryContext& ctx, const Subspace& center,
                                const Subspace& screen, std::span<const Point> points) {
  require_ambient(ctx, center);
  require_ambient(ctx, screen);
  if (center.dim() + screen.dim() != ctx.n() - 1 || !meet(ctx, center, screen).is_empty()) {
    throw Error(ErrorCode::BadFrame, "center and screen are not complementary");
  }
  std::vector<Point> out;
  for (const auto& p : points) {
    if (contains(ctx, center, p)) {
      throw Error(ErrorCode::PointInCenter, "point " + std::to_string(p.index) + " lies in the center");
    }
    const Subspace image = meet(ctx, span(ctx, center, p), screen);
    out.push_back(Point{image.basis().front(), ctx.point_index(image.basis().front())});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Subspace random_subspace(const GeometryContext& ctx, int m, std::mt19937_64& rng) {
  if (m < -1 || m > ctx.n()) throw Error(ErrorCode::DimensionMismatch, "subspace dimension out of range");
  if (m == -1) return Subspace::empty(ctx.n());
  std::uniform_int_distribution<Element> coord(0, static_cast<Element>(ctx.q() - 1));
  while (true) {
    std::vector<Row> rows(static_cast<std::size_t>(m) + 1, Row(static_cast<std::size_t>(ctx.width())));
    for (auto& r : rows) {
      for (auto& x : r) x = coord(rng);
    }
    auto reduced = rref(ctx.field(), std::move(rows));
    if (static_cast<int>(reduced.size()) == m + 1) return Subspace::from_rref(ctx.n(), std::move(reduced));
  }
}

// ---------------------------------------------------------------------------
// Incidence

IncidenceTable::IncidenceTable(const GeometryContext& ctx, int k)
    : k_(k), num_points_(ctx.num_points()) {
  if (k < 0 || k > ctx.n()) throw Error(ErrorCode::DimensionMismatch, "target dimension out of range");
  targets_ = enumerate_subspaces(ctx, k);
  index_.reserve(targets_.size());
  blockers_.reserve(targets_.size());
  covers_.assign(num_elements(), Bitset(targets_.size()));
  for (std::size_t t = 0; t < targets_.size(); ++t) {
    index_.emplace(targets_[t], t);
    Bitset b(num_elements());
    for (std::size_t p : point_indices(ctx, targets_[t])) {
      b.set(point_element(p));
      covers_[point_element(p)].set(t);
    }
    for (std::size_t h : point_indices(ctx, dual(ctx, targets_[t]))) {
      b.set(hyperplane_element(h));
      covers_[hyperplane_element(h)].set(t);
    }
    blockers_.push_back(std::move(b));
  }
}

std::optional<std::size_t> IncidenceTable::target_index(const Subspace& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace pgblock
