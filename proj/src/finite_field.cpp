#include "toplat/finite_field.hpp"

#include <string>

#include "toplat/error.hpp"

namespace toplat {
namespace {

std::vector<int> digits(int value, int p, int k) {
  std::vector<int> out(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i, value /= p) out[static_cast<std::size_t>(i)] = value % p;
  return out;
}

int encode(const std::vector<int>& coeffs, int p) {
  int value = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) value = value * p + *it;
  return value;
}

}  // namespace

FiniteField FiniteField::make(int p, int k) {
  FiniteField f;
  f.p_ = p;
  f.k_ = k;
  if (k == 1 && (p == 2 || p == 3 || p == 5)) {
    f.modulus_ = {0, 1};
  } else if (p == 2 && k == 2) {
    f.modulus_ = {1, 1, 1};
  } else if (p == 2 && k == 3) {
    f.modulus_ = {1, 1, 0, 1};
  } else if (p == 3 && k == 2) {
    f.modulus_ = {1, 0, 1};
  } else {
    fail(ErrorKind::UnsupportedField, "GF(" + std::to_string(p) + "^" + std::to_string(k) + ") is not supported");
  }
  f.q_ = 1;
  for (int i = 0; i < k; ++i) f.q_ *= p;
  const auto q = static_cast<std::size_t>(f.q_);
  f.add_.assign(q * q, 0);
  f.mul_.assign(q * q, 0);
  f.neg_.assign(q, 0);
  f.inv_.assign(q, 0);
  for (int a = 0; a < f.q_; ++a) {
    const auto da = digits(a, p, k);
    std::vector<int> na(da.size());
    for (std::size_t i = 0; i < da.size(); ++i) na[i] = (p - da[i]) % p;
    f.neg_[static_cast<std::size_t>(a)] = encode(na, p);
    for (int b = 0; b < f.q_; ++b) {
      const auto db = digits(b, p, k);
      std::vector<int> sum(da.size());
      for (std::size_t i = 0; i < da.size(); ++i) sum[i] = (da[i] + db[i]) % p;
      f.add_[f.idx(a, b)] = encode(sum, p);
      // schoolbook product, then reduce by the monic modulus from the top down
      std::vector<int> prod(2 * da.size(), 0);
      for (std::size_t i = 0; i < da.size(); ++i) {
        for (std::size_t j = 0; j < db.size(); ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
      }
      for (int deg = 2 * k - 1; deg >= k; --deg) {
        const int c = prod[static_cast<std::size_t>(deg)];
        if (c == 0) continue;
        for (int i = 0; i <= k; ++i) {
          auto& slot = prod[static_cast<std::size_t>(deg - k + i)];
          slot = ((slot - c * f.modulus_[static_cast<std::size_t>(i)]) % p + p) % p;
        }
      }
      prod.resize(static_cast<std::size_t>(k));
      f.mul_[f.idx(a, b)] = encode(prod, p);
    }
  }
  for (int a = 1; a < f.q_; ++a) {
    for (int b = 1; b < f.q_; ++b) {
      if (f.mul(a, b) == 1) f.inv_[static_cast<std::size_t>(a)] = b;
    }
  }
  return f;
}

int FiniteField::inv(int a) const {
  if (a == 0) fail(ErrorKind::DivisionByZero, "0 has no inverse in GF(" + std::to_string(q_) + ")");
  return inv_[static_cast<std::size_t>(a)];
}

int FiniteField::pow(int a, long long e) const {
  int result = 1, base = a;
  for (; e > 0; e >>= 1) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
  }
  return result;
}

int FiniteField::apply(FieldAut aut, int a) const {
  long long e = 1;
  for (int i = 0; i < ((aut.exponent % k_) + k_) % k_; ++i) e *= p_;
  return pow(a, e);
}

std::vector<FieldAut> FiniteField::automorphisms() const {
  std::vector<FieldAut> out;
  for (int e = 0; e < k_; ++e) out.push_back({e});
  return out;
}

}  // namespace toplat
