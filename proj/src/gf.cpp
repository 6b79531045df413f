#include "pgblock/gf.hpp"

#include <map>
#include <string>

namespace pgblock {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPrimeP: return "NonPrimeP";
    case ErrorCode::NoBuiltinModulus: return "NoBuiltinModulus";
    case ErrorCode::ReducibleModulus: return "ReducibleModulus";
    case ErrorCode::InvalidModulus: return "InvalidModulus";
    case ErrorCode::FieldTooLarge: return "FieldTooLarge";
    case ErrorCode::InverseOfZero: return "InverseOfZero";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BadFrame: return "BadFrame";
    case ErrorCode::PointInCenter: return "PointInCenter";
    case ErrorCode::InvalidQ: return "InvalidQ";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::NotBlocking: return "NotBlocking";
    case ErrorCode::NotALine: return "NotALine";
    case ErrorCode::RhoMeetsB0: return "RhoMeetsB0";
    case ErrorCode::WrongAmbient: return "WrongAmbient";
    case ErrorCode::B0NotInSigma: return "B0NotInSigma";
    case ErrorCode::PNotInSigma: return "PNotInSigma";
    case ErrorCode::PInB0: return "PInB0";
    case ErrorCode::BadPencil: return "BadPencil";
    case ErrorCode::EmptyPart: return "EmptyPart";
    case ErrorCode::WrongAnchorDim: return "WrongAnchorDim";
    case ErrorCode::WrongParameters: return "WrongParameters";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

namespace {

constexpr int kMaxOrder = 1 << 16;
constexpr int kMaxTabledOrder = 256;

const std::map<int, std::vector<int>>& builtin_moduli() {
  static const std::map<int, std::vector<int>> table = {
      {4, {1, 1, 1}},        // x^2 + x + 1
      {8, {1, 1, 0, 1}},     // x^3 + x + 1
      {9, {1, 0, 1}},        // x^2 + 1
      {16, {1, 1, 0, 0, 1}}, // x^4 + x + 1
      {25, {2, 0, 1}},       // x^2 + 2
      {27, {1, 2, 0, 1}},    // x^3 + 2x + 1
  };
  return table;
}

using Poly = std::vector<int>;  // low degree first, no trailing zeros

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int inverse_mod_p(int a, int p) {
  std::int64_t result = 1;
  std::int64_t base = a % p;
  for (int exp = p - 2; exp > 0; exp >>= 1) {
    if (exp & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<int>(result);
}

// Remainder of f modulo g over GF(p); g must be nonzero.
Poly poly_mod(Poly f, const Poly& g, int p) {
  trim(f);
  const int dg = static_cast<int>(g.size()) - 1;
  const int lead_inv = inverse_mod_p(g.back(), p);
  while (static_cast<int>(f.size()) - 1 >= dg) {
    const int shift = static_cast<int>(f.size()) - 1 - dg;
    const std::int64_t factor = std::int64_t{f.back()} * lead_inv % p;
    for (int i = 0; i <= dg; ++i) {
      f[shift + i] = static_cast<int>(((f[shift + i] - factor * g[i]) % p + p) % p);
    }
    trim(f);
  }
  return f;
}

bool is_irreducible(const Poly& modulus, int p) {
  const int e = static_cast<int>(modulus.size()) - 1;
  for (int d = 1; d <= e / 2; ++d) {
    int count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (int code = 0; code < count; ++code) {
      Poly g(d + 1, 0);
      int c = code;
      for (int i = 0; i < d; ++i) {
        g[i] = c % p;
        c /= p;
      }
      g[d] = 1;
      if (poly_mod(modulus, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::optional<std::pair<int, int>> prime_power(std::int64_t q) {
  if (q < 2) return std::nullopt;
  std::int64_t p = 2;
  while (q % p != 0) ++p;
  int e = 0;
  std::int64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1) return std::nullopt;
  return std::pair<int, int>{static_cast<int>(p), e};
}

FieldSpec FieldSpec::create(int p, int e, std::optional<std::vector<int>> modulus) {
  if (!is_prime(p)) {
    throw Error(ErrorCode::NonPrimeP, "p = " + std::to_string(p) + " is not prime");
  }
  if (e < 1) {
    throw Error(ErrorCode::InvalidModulus, "exponent must be at least 1");
  }
  std::int64_t q = 1;
  for (int i = 0; i < e; ++i) {
    q *= p;
    if (q > kMaxOrder) {
      throw Error(ErrorCode::FieldTooLarge, "field order exceeds " + std::to_string(kMaxOrder));
    }
  }
  if (e == 1) {
    return FieldSpec(p, 1, {0, 1});
  }
  if (!modulus) {
    auto it = builtin_moduli().find(static_cast<int>(q));
    if (it == builtin_moduli().end()) {
      throw Error(ErrorCode::NoBuiltinModulus,
                  "no built-in modulus for q = " + std::to_string(q));
    }
    modulus = it->second;
  }
  const Poly& f = *modulus;
  if (static_cast<int>(f.size()) != e + 1 || f.back() != 1) {
    throw Error(ErrorCode::InvalidModulus, "modulus must be monic of degree " + std::to_string(e));
  }
  for (int c : f) {
    if (c < 0 || c >= p) {
      throw Error(ErrorCode::InvalidModulus, "modulus coefficient outside [0, p)");
    }
  }
  if (!is_irreducible(f, p)) {
    throw Error(ErrorCode::ReducibleModulus, "modulus is reducible over GF(" + std::to_string(p) + ")");
  }
  return FieldSpec(p, e, f);
}

FieldSpec FieldSpec::of_order(int q) {
  auto pe = prime_power(q);
  if (!pe) {
    throw Error(ErrorCode::InvalidQ, "q = " + std::to_string(q) + " is not a prime power");
  }
  return create(pe->first, pe->second);
}

FieldSpec::FieldSpec(int p, int e, std::vector<int> modulus)
    : p_(p), e_(e), q_(1), modulus_(std::move(modulus)) {
  for (int i = 0; i < e_; ++i) q_ *= p_;
  if (q_ > kMaxTabledOrder) return;

  const auto q = static_cast<std::size_t>(q_);
  add_table_.resize(q * q);
  mul_table_.resize(q * q);
  neg_table_.resize(q);
  inv_table_.assign(q, 0);
  for (Element a = 0; a < q; ++a) {
    neg_table_[a] = slow_neg(a);
    for (Element b = 0; b < q; ++b) {
      add_table_[a * q + b] = slow_add(a, b);
      mul_table_[a * q + b] = slow_mul(a, b);
      if (a != 0 && mul_table_[a * q + b] == 1) inv_table_[a] = b;
    }
  }
  tabled_ = true;
}

void FieldSpec::check(Element a) const {
  if (!contains(a)) {
    throw Error(ErrorCode::InvalidInput,
                "element code " + std::to_string(a) + " outside GF(" + std::to_string(q_) + ")");
  }
}

Element FieldSpec::slow_add(Element a, Element b) const {
  Element result = 0;
  Element place = 1;
  for (int i = 0; i < e_; ++i) {
    result += ((a % p_ + b % p_) % p_) * place;
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return result;
}

Element FieldSpec::slow_neg(Element a) const {
  Element result = 0;
  Element place = 1;
  for (int i = 0; i < e_; ++i) {
    result += ((p_ - a % p_) % p_) * place;
    a /= p_;
    place *= p_;
  }
  return result;
}

Element FieldSpec::slow_mul(Element a, Element b) const {
  if (e_ == 1) return static_cast<Element>(std::uint64_t{a} * b % static_cast<std::uint64_t>(p_));
  Poly fa(e_), fb(e_);
  for (int i = 0; i < e_; ++i) {
    fa[i] = static_cast<int>(a % p_);
    fb[i] = static_cast<int>(b % p_);
    a /= p_;
    b /= p_;
  }
  Poly product(2 * e_, 0);
  for (int i = 0; i < e_; ++i) {
    for (int j = 0; j < e_; ++j) {
      product[i + j] = static_cast<int>((product[i + j] + std::int64_t{fa[i]} * fb[j]) % p_);
    }
  }
  const Poly reduced = poly_mod(product, modulus_, p_);
  Element result = 0;
  Element place = 1;
  for (std::size_t i = 0; i < reduced.size(); ++i) {
    result += static_cast<Element>(reduced[i]) * place;
    place *= p_;
  }
  return result;
}

Element FieldSpec::add(Element a, Element b) const {
  if (tabled_) return add_table_[a * static_cast<Element>(q_) + b];
  check(a);
  check(b);
  return slow_add(a, b);
}

Element FieldSpec::neg(Element a) const {
  if (tabled_) return neg_table_[a];
  check(a);
  return slow_neg(a);
}

Element FieldSpec::sub(Element a, Element b) const { return add(a, neg(b)); }

Element FieldSpec::mul(Element a, Element b) const {
  if (tabled_) return mul_table_[a * static_cast<Element>(q_) + b];
  check(a);
  check(b);
  return slow_mul(a, b);
}

Element FieldSpec::inv(Element a) const {
  if (a == 0) throw Error(ErrorCode::InverseOfZero, "zero has no inverse");
  if (tabled_) return inv_table_[a];
  check(a);
  return pow(a, static_cast<std::uint64_t>(q_) - 2);
}

Element FieldSpec::pow(Element a, std::uint64_t exponent) const {
  Element result = 1;
  Element base = a;
  while (exponent > 0) {
    if (exponent & 1) result = mul(result, base);
    base = mul(base, base);
    exponent >>= 1;
  }
  return result;
}

std::vector<Element> FieldSpec::elements() const {
  std::vector<Element> all(static_cast<std::size_t>(q_));
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Element>(i);
  return all;
}

Element field_arith(const FieldSpec& field, FieldOp op, Element a, std::optional<Element> b) {
  if (!field.contains(a) || (b && !field.contains(*b))) {
    throw Error(ErrorCode::InvalidInput, "operand outside the field");
  }
  auto need_b = [&]() {
    if (!b) throw Error(ErrorCode::InvalidInput, "binary field operation needs two operands");
    return *b;
  };
  switch (op) {
    case FieldOp::Add: return field.add(a, need_b());
    case FieldOp::Sub: return field.sub(a, need_b());
    case FieldOp::Mul: return field.mul(a, need_b());
    case FieldOp::Inv: return field.inv(a);
    case FieldOp::Neg: return field.neg(a);
  }
  return 0;
}

std::vector<Element> field_elements(const FieldSpec& field) { return field.elements(); }

}  // namespace pgblock
