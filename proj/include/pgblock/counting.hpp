#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <span>
#include <string>

#include "pgblock/geometry.hpp"

namespace pgblock {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// Gaussian binomial [a choose b]_q via the product formula; 0 unless
/// 0 <= b <= a. Throws InvalidQ unless q >= 2 is a prime power.
BigInt gaussian(long a, long b, long q);

/// Number of points of PG(m, q); 0 for m = -1.
BigInt theta(long m, long q);

/// Lower bound on the number of s-spaces missing a point set of size
/// b_size <= theta_d (Metsch). Throws HypothesisViolated outside its range.
BigInt metsch_lower_bound(int n, int q, int d, int s, const BigInt& b_size);

/// Dual form: s-spaces contained in none of b_size <= theta_d hyperplanes.
BigInt metsch_dual_lower_bound(int n, int q, int d, int s, const BigInt& b_size);

/// A rational that is guaranteed to be >= the real quantity it stands for.
struct CertifiedUpperBound {
  BigRational value;
  double approx;  // value rounded towards +infinity
};

/// Upper bound on a Gaussian binomial [n_ choose k_]_q (Heger and Nagy),
/// with the power of e replaced by a certified rational upper bound.
CertifiedUpperBound heger_nagy_upper_bound(int n_, int k_, int q);

/// Certified upper bound on e^x for rational 0 <= x <= 1.
BigRational exp_upper_bound(const BigRational& x);

/// Smallest size of a point/hyperplane set blocking k-spaces in PG(n, q).
/// `value` is empty for the two q = 2 cases the theorem leaves open.
struct MainTheoremBound {
  enum class Case { HyperplanePencil = 1, SubspacePoints = 2, Middle = 3, Open = 0 };
  Case which;
  std::optional<BigInt> value;

  bool is_open() const { return which == Case::Open; }
};

MainTheoremBound main_theorem_bound(int n, int k, int q);

enum class BeutelspacherClass { ContainsSpace, LargeNonTrivial, ViolatesBound };

struct BeutelspacherResult {
  BeutelspacherClass kind;
  std::optional<Subspace> contained_space;  // set for ContainsSpace
};

/// Classifies a point blocking set B0 for k-spaces by whether it contains an
/// (n-k)-space, deciding the sqrt(q) comparison by exact squaring.
BeutelspacherResult beutelspacher_classify(const GeometryContext& ctx,
                                           std::span<const std::size_t> b0, int k);

std::string to_string(BeutelspacherClass c);

struct BoundReport {
  std::string name;
  std::map<std::string, BigInt> params;
  std::string value;  // decimal integer, or a decimal rounded up for real-valued bounds
  struct Comparison {
    BigInt actual;
    bool satisfied;
  };
  std::optional<Comparison> comparison;
};

}  // namespace pgblock
