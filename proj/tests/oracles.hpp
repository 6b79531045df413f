#pragma once
// Brute-force reference implementations used as test oracles. They share
// nothing with the library beyond FieldSpec arithmetic: subspaces are point
// sets closed under joining lines, points are found by scanning all vectors.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "pgblock/gf.hpp"

namespace oracle {

using pgblock::Element;
using pgblock::FieldSpec;
using Vec = std::vector<Element>;
using PointSet = std::vector<std::size_t>;  // sorted oracle indices

/// Polynomial arithmetic over GF(p) with coefficients low degree first.
inline std::vector<int> poly_mul_mod(const std::vector<int>& a, const std::vector<int>& b,
                                     const std::vector<int>& modulus, int p) {
  std::vector<int> prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  const std::size_t e = modulus.size() - 1;
  for (std::size_t d = prod.size(); d-- > e;) {
    const int c = prod[d];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= e; ++i) {
      prod[d - e + i] = ((prod[d - e + i] - c * modulus[i]) % p + p) % p;
    }
  }
  prod.resize(e, 0);
  return prod;
}

inline std::vector<int> digits(Element code, int p, int e) {
  std::vector<int> out(static_cast<std::size_t>(e));
  for (int i = 0; i < e; ++i) {
    out[static_cast<std::size_t>(i)] = static_cast<int>(code % static_cast<Element>(p));
    code /= static_cast<Element>(p);
  }
  return out;
}

inline Element code_of(const std::vector<int>& d, int p) {
  Element c = 0;
  for (std::size_t i = d.size(); i-- > 0;) c = c * static_cast<Element>(p) + static_cast<Element>(d[i]);
  return c;
}

/// PG(n, q) by exhaustive scanning.
class Space {
 public:
  Space(FieldSpec f, int n) : f_(std::move(f)), n_(n) {
    const int q = f_.q();
    Vec v(static_cast<std::size_t>(n + 1), 0);
    std::set<Vec> seen;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == v.size()) {
        Vec w = v;
        if (normalize(w)) seen.insert(w);
        return;
      }
      for (int x = 0; x < q; ++x) {
        v[i] = static_cast<Element>(x);
        rec(i + 1);
      }
    };
    rec(0);
    points_.assign(seen.begin(), seen.end());
    for (std::size_t i = 0; i < points_.size(); ++i) index_[points_[i]] = i;
  }

  const FieldSpec& field() const { return f_; }
  int n() const { return n_; }
  std::size_t num_points() const { return points_.size(); }
  const Vec& point(std::size_t i) const { return points_[i]; }

  /// Scales so the leftmost nonzero entry is 1; false for the zero vector.
  bool normalize(Vec& v) const {
    for (Element x : v) {
      if (x != 0) {
        const Element inv = f_.inv(x);
        for (auto& y : v) y = f_.mul(y, inv);
        return true;
      }
    }
    return false;
  }

  std::size_t index_of(Vec v) const {
    normalize(v);
    return index_.at(v);
  }

  /// Points on the line through two distinct points.
  PointSet line(std::size_t a, std::size_t b) const {
    PointSet out{a};
    for (Element lambda : f_.elements()) {
      Vec v = points_[b];
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = f_.add(v[i], f_.mul(lambda, points_[a][i]));
      out.push_back(index_of(v));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  /// Smallest line-closed set containing `gen`.
  PointSet closure(PointSet gen) const {
    std::set<std::size_t> s(gen.begin(), gen.end());
    bool grown = true;
    while (grown) {
      grown = false;
      const std::vector<std::size_t> cur(s.begin(), s.end());
      for (std::size_t i = 0; i < cur.size(); ++i) {
        for (std::size_t j = i + 1; j < cur.size(); ++j) {
          for (std::size_t x : line(cur[i], cur[j])) grown |= s.insert(x).second;
        }
      }
    }
    return {s.begin(), s.end()};
  }

  /// Projective dimension of a line-closed set, via theta_m = |S|.
  int dim_of(const PointSet& s) const {
    std::size_t theta = 0;
    std::size_t pw = 1;
    for (int m = -1; m <= n_; ++m) {
      if (theta == s.size()) return m;
      theta += pw;
      pw *= static_cast<std::size_t>(f_.q());
    }
    return -2;
  }

  /// All m-spaces as sorted point sets, by growing spans point by point.
  std::vector<PointSet> subspaces(int m) const {
    std::set<PointSet> level;
    if (m < 0) return {PointSet{}};
    for (std::size_t i = 0; i < points_.size(); ++i) level.insert(PointSet{i});
    for (int d = 1; d <= m; ++d) {
      std::set<PointSet> next;
      for (const auto& s : level) {
        for (std::size_t p = 0; p < points_.size(); ++p) {
          if (std::binary_search(s.begin(), s.end(), p)) continue;
          PointSet g = s;
          g.push_back(p);
          next.insert(closure(g));
        }
      }
      level = std::move(next);
    }
    return {level.begin(), level.end()};
  }

  /// Points x with sum a_i x_i = 0.
  PointSet hyperplane(const Vec& a) const {
    PointSet out;
    for (std::size_t i = 0; i < points_.size(); ++i) {
      Element s = 0;
      for (std::size_t j = 0; j < a.size(); ++j) s = f_.add(s, f_.mul(a[j], points_[i][j]));
      if (s == 0) out.push_back(i);
    }
    return out;
  }

 private:
  FieldSpec f_;
  int n_;
  std::vector<Vec> points_;
  std::map<Vec, std::size_t> index_;
};

inline bool subset(const PointSet& a, const PointSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool meets(const PointSet& a, const PointSet& b) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    if (a[i] < b[j]) ++i; else ++j;
  }
  return false;
}

/// Blocking by definition: each target contains a point or lies in a hyperplane.
class Blocking {
 public:
  Blocking(const Space& s, int k) : space_(s), targets_(s.subspaces(k)) {
    for (std::size_t h = 0; h < s.num_points(); ++h) hyperplanes_.push_back(s.hyperplane(s.point(h)));
  }

  const std::vector<PointSet>& targets() const { return targets_; }

  /// Elements numbered points first, then hyperplanes by dual point index.
  bool incident(std::size_t element, const PointSet& target) const {
    const std::size_t np = space_.num_points();
    if (element < np) return std::binary_search(target.begin(), target.end(), element);
    return subset(target, hyperplanes_[element - np]);
  }

  std::size_t unblocked(const std::vector<std::size_t>& elements, const std::vector<PointSet>& targets) const {
    std::size_t c = 0;
    for (const auto& t : targets) {
      bool hit = false;
      for (std::size_t e : elements) {
        if (incident(e, t)) {
          hit = true;
          break;
        }
      }
      if (!hit) ++c;
    }
    return c;
  }

  bool blocks(const std::vector<std::size_t>& elements) const { return unblocked(elements, targets_) == 0; }

 private:
  const Space& space_;
  std::vector<PointSet> targets_;
  std::vector<PointSet> hyperplanes_;
};

/// Calls fn on every size-r subset of {0..n-1}, lexicographically.
inline void for_each_subset(std::size_t n, std::size_t r,
                            const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> c(r);
  for (std::size_t i = 0; i < r; ++i) c[i] = i;
  if (r > n) return;
  while (true) {
    fn(c);
    std::size_t i = r;
    while (i > 0 && c[i - 1] == n - r + i - 1) --i;
    if (i == 0) return;
    ++c[i - 1];
    for (std::size_t j = i; j < r; ++j) c[j] = c[j - 1] + 1;
  }
}

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

/// Random subset of {0..n-1} of the given size, sorted.
inline std::vector<std::size_t> random_subset(std::size_t n, std::size_t size, std::mt19937_64& rng) {
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(size);
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace oracle
