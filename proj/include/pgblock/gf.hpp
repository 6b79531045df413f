#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pgblock/error.hpp"

namespace pgblock {

/// A field element under the base-p digit encoding: digit i of the code is
/// the coefficient of x^i in the polynomial representative. 0 and 1 are the
/// additive and multiplicative identities.
using Element = std::uint32_t;

enum class FieldOp { Add, Sub, Mul, Inv, Neg };

/// GF(p^e) with a fixed monic irreducible modulus (coefficients listed from
/// x^0 up to x^e). Immutable once built; all arithmetic for q <= 256 is
/// served from precomputed tables.
class FieldSpec {
 public:
  /// Validates p and e, looks up a built-in modulus when none is given and
  /// e > 1, and checks irreducibility of a supplied one.
  static FieldSpec create(int p, int e,
                          std::optional<std::vector<int>> modulus = std::nullopt);

  /// Factors q as a prime power and uses the built-in modulus table.
  static FieldSpec of_order(int q);

  int p() const noexcept { return p_; }
  int e() const noexcept { return e_; }
  int q() const noexcept { return q_; }
  const std::vector<int>& modulus() const noexcept { return modulus_; }

  Element add(Element a, Element b) const;
  Element sub(Element a, Element b) const;
  Element neg(Element a) const;
  Element mul(Element a, Element b) const;
  Element inv(Element a) const;
  Element pow(Element a, std::uint64_t exponent) const;

  /// All q elements in increasing code order; this order is used everywhere
  /// coordinates are compared.
  std::vector<Element> elements() const;

  bool contains(Element a) const noexcept { return a < static_cast<Element>(q_); }

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.p_ == b.p_ && a.e_ == b.e_ && a.modulus_ == b.modulus_;
  }

 private:
  FieldSpec(int p, int e, std::vector<int> modulus);

  Element slow_add(Element a, Element b) const;
  Element slow_neg(Element a) const;
  Element slow_mul(Element a, Element b) const;
  void check(Element a) const;

  int p_;
  int e_;
  int q_;
  std::vector<int> modulus_;
  bool tabled_ = false;
  std::vector<Element> add_table_;
  std::vector<Element> mul_table_;
  std::vector<Element> neg_table_;
  std::vector<Element> inv_table_;
};

Element field_arith(const FieldSpec& field, FieldOp op, Element a,
                    std::optional<Element> b = std::nullopt);

std::vector<Element> field_elements(const FieldSpec& field);

bool is_prime(std::int64_t n);

/// Returns (p, e) with q = p^e, or nullopt if q is not a prime power.
std::optional<std::pair<int, int>> prime_power(std::int64_t q);

}  // namespace pgblock
