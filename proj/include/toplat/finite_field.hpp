#pragma once

#include <span>
#include <vector>

namespace toplat {

/// Field automorphism x ↦ x^(p^exponent). Every automorphism of GF(p^k) has this form.
struct FieldAut {
  int exponent = 0;

  bool operator==(const FieldAut&) const = default;
  auto operator<=>(const FieldAut&) const = default;
};

/// GF(p^k) for the supported pairs (2,1), (3,1), (5,1), (2,2), (2,3), (3,2).
///
/// Elements are the integers 0..q-1; the element Σ c_i β^i (β a root of the
/// fixed modulus) is encoded as Σ c_i p^i. Moduli: GF(4) x²+x+1,
/// GF(8) x³+x+1, GF(9) x²+1.
class FiniteField {
 public:
  /// Throws UnsupportedField for pairs outside the list.
  static FiniteField make(int p, int k);

  int characteristic() const { return p_; }
  int degree() const { return k_; }
  int order() const { return q_; }
  /// Monic modulus coefficients, constant term first.
  std::span<const int> modulus() const { return modulus_; }

  int add(int a, int b) const { return add_[idx(a, b)]; }
  int sub(int a, int b) const { return add_[idx(a, neg_[static_cast<std::size_t>(b)])]; }
  int neg(int a) const { return neg_[static_cast<std::size_t>(a)]; }
  int mul(int a, int b) const { return mul_[idx(a, b)]; }
  /// Throws DivisionByZero for 0.
  int inv(int a) const;
  int div(int a, int b) const { return mul(a, inv(b)); }
  int pow(int a, long long e) const;

  int apply(FieldAut aut, int a) const;
  FieldAut compose(FieldAut outer, FieldAut inner) const { return {(outer.exponent + inner.exponent) % k_}; }
  FieldAut inverse(FieldAut aut) const { return {(k_ - aut.exponent % k_) % k_}; }
  std::vector<FieldAut> automorphisms() const;

  bool operator==(const FiniteField& other) const { return p_ == other.p_ && k_ == other.k_; }

 private:
  FiniteField() = default;
  std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a * q_ + b); }

  int p_ = 2, k_ = 1, q_ = 2;
  std::vector<int> modulus_;
  std::vector<int> add_, mul_, neg_, inv_;
};

}  // namespace toplat
