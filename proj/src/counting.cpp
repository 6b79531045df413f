#include "pgblock/counting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pgblock/gf.hpp"

namespace pgblock {

namespace {

void require_q(long q) {
  if (q < 2 || !prime_power(q)) {
    throw Error(ErrorCode::InvalidQ, "q = " + std::to_string(q) + " is not a prime power");
  }
}

BigInt power(long base, unsigned long exponent) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), exponent);
  return r;
}

}  // namespace

BigInt gaussian(long a, long b, long q) {
  require_q(q);
  if (b < 0 || b > a) return 0;
  BigInt num = 1;
  BigInt den = 1;
  for (long i = 1; i <= b; ++i) {
    num *= power(q, static_cast<unsigned long>(a - b + i)) - 1;
    den *= power(q, static_cast<unsigned long>(i)) - 1;
  }
  BigInt out;
  mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

BigInt theta(long m, long q) {
  require_q(q);
  if (m < 0) return 0;
  return (power(q, static_cast<unsigned long>(m + 1)) - 1) / (q - 1);
}

BigInt metsch_lower_bound(int n, int q, int d, int s, const BigInt& b_size) {
  require_q(q);
  if (d < 0 || s < 0 || n < d + s) {
    throw Error(ErrorCode::HypothesisViolated, "need d, s >= 0 and n >= d + s");
  }
  const BigInt td = theta(d, q);
  if (b_size < 0 || b_size > td) {
    throw Error(ErrorCode::HypothesisViolated, "|B| must not exceed theta_d = " + td.get_str());
  }
  return power(q, static_cast<unsigned long>((s + 1) * (d + 1))) * gaussian(n - d, s + 1, q) +
         (td - b_size) * power(q, static_cast<unsigned long>(s * d)) * gaussian(n - d, s, q);
}

BigInt metsch_dual_lower_bound(int n, int q, int d, int s, const BigInt& b_size) {
  require_q(q);
  if (d < 0 || s < d - 1 || s >= n) {
    throw Error(ErrorCode::HypothesisViolated, "need d >= 0 and d - 1 <= s < n");
  }
  const BigInt td = theta(d, q);
  if (b_size < 0 || b_size > td) {
    throw Error(ErrorCode::HypothesisViolated, "|B| must not exceed theta_d = " + td.get_str());
  }
  return power(q, static_cast<unsigned long>((n - s) * (d + 1))) * gaussian(n - d, n - s, q) +
         (td - b_size) * power(q, static_cast<unsigned long>((n - s - 1) * d)) *
             gaussian(n - d, n - s - 1, q);
}

BigRational exp_upper_bound(const BigRational& x) {
  if (x < 0 || x > 1) throw Error(ErrorCode::InvalidInput, "exp bound needs 0 <= x <= 1");
  constexpr int kTerms = 30;
  BigRational sum = 0;
  BigRational term = 1;  // x^j / j!
  for (int j = 0; j <= kTerms; ++j) {
    sum += term;
    term *= x;
    term /= j + 1;
  }
  // term is now x^(N+1)/(N+1)!; the Lagrange remainder is at most e * term < 3 * term.
  sum += 3 * term;
  sum.canonicalize();
  return sum;
}

CertifiedUpperBound heger_nagy_upper_bound(int n_, int k_, int q) {
  require_q(q);
  BigRational bound;
  if (q > 2) {
    bound = BigRational(power(q, static_cast<unsigned long>((n_ - k_) * k_))) *
            exp_upper_bound(BigRational(1, q - 2));
  } else {
    bound = BigRational(power(2, static_cast<unsigned long>((n_ - k_) * k_ + 1))) *
            exp_upper_bound(BigRational(2, 3));
  }
  bound.canonicalize();
  double approx = bound.get_d();  // truncates
  approx = std::nextafter(approx, INFINITY);
  return {bound, approx};
}

MainTheoremBound main_theorem_bound(int n, int k, int q) {
  require_q(q);
  if (k < 0 || k >= n) throw Error(ErrorCode::HypothesisViolated, "need 0 <= k < n");
  if (q == 2 && (2 * k == n - 2 || 2 * k == n)) {
    return {MainTheoremBound::Case::Open, std::nullopt};
  }
  if (2 * k < n - 1) return {MainTheoremBound::Case::HyperplanePencil, theta(k + 1, q)};
  if (2 * k > n - 1) return {MainTheoremBound::Case::SubspacePoints, theta(n - k, q)};
  return {MainTheoremBound::Case::Middle, (q + 1) * power(q, static_cast<unsigned long>(k))};
}

BeutelspacherResult beutelspacher_classify(const GeometryContext& ctx,
                                           std::span<const std::size_t> b0, int k) {
  const int n = ctx.n();
  const int q = ctx.q();
  if (k < 0 || k >= n) throw Error(ErrorCode::HypothesisViolated, "need 0 <= k < n");
  std::vector<std::size_t> sorted(b0.begin(), b0.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  const BigInt size = static_cast<unsigned long>(sorted.size());
  const BigInt th = theta(n - k, q);
  if (size >= th) {
    SubspaceEnumerator it(ctx.field(), n, n - k);
    while (auto s = it.next()) {
      const auto pts = point_indices(ctx, *s);
      if (std::includes(sorted.begin(), sorted.end(), pts.begin(), pts.end())) {
        return {BeutelspacherClass::ContainsSpace, std::move(*s)};
      }
    }
  }
  // |B0| >= theta + q^(n-k-1) sqrt(q)  <=>  |B0| > theta and (|B0| - theta)^2 >= q^(2(n-k-1)+1)
  const BigInt excess = size - th;
  if (excess > 0 && excess * excess >= power(q, static_cast<unsigned long>(2 * (n - k - 1) + 1))) {
    return {BeutelspacherClass::LargeNonTrivial, std::nullopt};
  }
  return {BeutelspacherClass::ViolatesBound, std::nullopt};
}

std::string to_string(BeutelspacherClass c) {
  switch (c) {
    case BeutelspacherClass::ContainsSpace: return "contains_space";
    case BeutelspacherClass::LargeNonTrivial: return "large_non_trivial";
    case BeutelspacherClass::ViolatesBound: return "violates_bound";
  }
  return "unknown";
}

}  // namespace pgblock
